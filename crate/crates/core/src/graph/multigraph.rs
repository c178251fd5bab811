use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use super::{Graph, GraphError, Vertex};

/// Largest multigraph [`multigraph_iso`] will search.
pub const ISO_VERTEX_LIMIT: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MultigraphError {
    #[error("edge endpoint {0} is not a vertex")]
    UnknownEndpoint(Vertex),
    #[error("edge multiplicity must be positive")]
    ZeroMultiplicity,
    #[error("isomorphism search limited to {limit} vertices, got {got}")]
    Budget { limit: usize, got: usize },
}

/// A finite multigraph with loops: unordered vertex pairs with positive
/// multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Multigraph {
    vertices: BTreeSet<Vertex>,
    edges: BTreeMap<(Vertex, Vertex), usize>,
}

impl Multigraph {
    pub fn new(
        vertices: impl IntoIterator<Item = Vertex>,
        edges: impl IntoIterator<Item = ((Vertex, Vertex), usize)>,
    ) -> Result<Self, MultigraphError> {
        let mut m = Self {
            vertices: vertices.into_iter().collect(),
            edges: BTreeMap::new(),
        };
        for ((u, w), k) in edges {
            m.add_edge(u, w, k)?;
        }
        Ok(m)
    }

    /// The simple graph viewed as a multigraph.
    pub fn from_graph(g: &Graph) -> Result<Self, GraphError> {
        let vs = g.vertices().ok_or(GraphError::Unsupported("multigraph conversion"))?;
        let edges = g.edges()?;
        Ok(Self::new(vs.iter().copied(), edges.into_iter().map(|e| (e, 1)))
            .expect("graph edges join graph vertices"))
    }

    pub fn add_edge(&mut self, u: Vertex, w: Vertex, k: usize) -> Result<(), MultigraphError> {
        if k == 0 {
            return Err(MultigraphError::ZeroMultiplicity);
        }
        for x in [u, w] {
            if !self.vertices.contains(&x) {
                return Err(MultigraphError::UnknownEndpoint(x));
            }
        }
        *self.edges.entry((u.min(w), u.max(w))).or_insert(0) += k;
        Ok(())
    }

    pub fn vertices(&self) -> &BTreeSet<Vertex> {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Edges `(u, w)` with `u <= w` and their multiplicities.
    pub fn edges(&self) -> &BTreeMap<(Vertex, Vertex), usize> {
        &self.edges
    }

    pub fn multiplicity(&self, u: Vertex, w: Vertex) -> usize {
        self.edges.get(&(u.min(w), u.max(w))).copied().unwrap_or(0)
    }

    pub fn loops(&self, v: Vertex) -> usize {
        self.multiplicity(v, v)
    }

    pub fn edge_total(&self) -> usize {
        self.edges.values().sum()
    }

    /// Number of edge ends at `v`, loops counted once.
    fn incidence(&self, v: Vertex) -> usize {
        self.edges
            .iter()
            .filter(|((a, b), _)| *a == v || *b == v)
            .map(|(_, k)| k)
            .sum()
    }

    fn signature(&self, v: Vertex) -> (usize, usize) {
        (self.loops(v), self.incidence(v))
    }
}

impl fmt::Display for Multigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} vertices;", self.vertices.len())?;
        for ((u, w), k) in &self.edges {
            write!(f, " {u}-{w}x{k}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoOutcome {
    /// A vertex bijection preserving every multiplicity, loops included.
    Isomorphic(BTreeMap<Vertex, Vertex>),
    NotIsomorphic(String),
}

impl IsoOutcome {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoOutcome::Isomorphic(_))
    }
}

/// Exhaustive backtracking isomorphism test for small multigraphs.
pub fn multigraph_iso(a: &Multigraph, b: &Multigraph) -> Result<IsoOutcome, MultigraphError> {
    for m in [a, b] {
        if m.vertex_count() > ISO_VERTEX_LIMIT {
            return Err(MultigraphError::Budget {
                limit: ISO_VERTEX_LIMIT,
                got: m.vertex_count(),
            });
        }
    }
    if a.vertex_count() != b.vertex_count() {
        return Ok(IsoOutcome::NotIsomorphic(format!(
            "vertex counts {} vs {}",
            a.vertex_count(),
            b.vertex_count()
        )));
    }
    if a.edge_total() != b.edge_total() {
        return Ok(IsoOutcome::NotIsomorphic(format!(
            "edge counts {} vs {}",
            a.edge_total(),
            b.edge_total()
        )));
    }
    let mut sa: Vec<_> = a.vertices.iter().map(|&v| a.signature(v)).collect();
    let mut sb: Vec<_> = b.vertices.iter().map(|&v| b.signature(v)).collect();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return Ok(IsoOutcome::NotIsomorphic(
            "loop counts or degree sequences differ".into(),
        ));
    }

    let order: Vec<Vertex> = a.vertices.iter().copied().collect();
    let targets: Vec<Vertex> = b.vertices.iter().copied().collect();
    let mut mapping: Vec<Vertex> = Vec::with_capacity(order.len());
    let mut used = vec![false; targets.len()];
    if extend(a, b, &order, &targets, &mut mapping, &mut used) {
        Ok(IsoOutcome::Isomorphic(order.into_iter().zip(mapping).collect()))
    } else {
        Ok(IsoOutcome::NotIsomorphic("no multiplicity-preserving bijection".into()))
    }
}

fn extend(
    a: &Multigraph,
    b: &Multigraph,
    order: &[Vertex],
    targets: &[Vertex],
    mapping: &mut Vec<Vertex>,
    used: &mut [bool],
) -> bool {
    let depth = mapping.len();
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    for (j, &t) in targets.iter().enumerate() {
        if used[j] || a.signature(v) != b.signature(t) {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .zip(mapping.iter())
            .all(|(&u, &fu)| a.multiplicity(u, v) == b.multiplicity(fu, t));
        if !consistent {
            continue;
        }
        used[j] = true;
        mapping.push(t);
        if extend(a, b, order, targets, mapping, used) {
            return true;
        }
        mapping.pop();
        used[j] = false;
    }
    false
}
