//! Simple graphs, finite or lazily generated, and the link/star calculus.
//!
//! Vertices are integers. Lazy families encode their labels injectively into
//! integers (the line uses the integers themselves, Cayley trees rank reduced
//! words by length and then lexicographically), so every graph carries one
//! global vertex order.

mod family;
mod multigraph;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::Deserialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::registry::{Registry, SpecError};
use crate::verdict::Verdict;

pub use family::{CayleyTree, FiniteGraph, GraphFamily, Line};
pub use multigraph::{multigraph_iso, IsoOutcome, Multigraph, MultigraphError};

pub type Vertex = i64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("asymmetric adjacency: {from} lists {to} but {to} does not list {from}")]
    AsymmetricAdjacency { from: Vertex, to: Vertex },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("unknown vertex {0}")]
    UnknownVertex(Vertex),
    #[error("{0} is only supported on finite graphs")]
    Unsupported(&'static str),
    #[error("vertex {0} is isolated, so the link of its link is undefined")]
    IsolatedVertex(Vertex),
    #[error("common link of an empty vertex set is undefined")]
    EmptyVertexSet,
    #[error("breadth-first search exceeded budget of {0} vertices")]
    Budget(usize),
    #[error("invalid graph: {0}")]
    Invalid(String),
}

/// Length of a shortest circuit; `Infinite` for forests.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Girth {
    Finite(usize),
    Infinite,
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(n) => write!(f, "{n}"),
            Girth::Infinite => write!(f, "inf"),
        }
    }
}

/// Outcome of a connectivity or local-finiteness check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BudgetedCheck {
    Holds,
    Fails,
    /// Lazy graph: no violation among the first `explored` vertices.
    VerifiedWithinBudget { explored: usize },
}

/// Shared handle to a graph family. Immutable; cheap to clone.
#[derive(Clone)]
pub struct Graph {
    family: Arc<dyn GraphFamily>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({})", self.family.spec())
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.family, &other.family) || self.family.spec() == other.family.spec()
    }
}

impl Eq for Graph {}

impl Graph {
    pub fn new(family: impl GraphFamily + 'static) -> Self {
        Self {
            family: Arc::new(family),
        }
    }

    pub fn from_spec(spec: &Value) -> Result<Self, SpecError> {
        registry().build(spec, &())
    }

    pub fn from_adjacency(adjacency: BTreeMap<Vertex, BTreeSet<Vertex>>) -> Result<Self, GraphError> {
        Ok(Self::new(FiniteGraph::from_adjacency(adjacency)?))
    }

    pub fn from_edges(
        vertices: impl IntoIterator<Item = Vertex>,
        edges: impl IntoIterator<Item = (Vertex, Vertex)>,
    ) -> Result<Self, GraphError> {
        Ok(Self::new(FiniteGraph::from_edges(vertices, edges)?))
    }

    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        if n < 3 {
            return Err(GraphError::Invalid(format!("cycle needs at least 3 vertices, got {n}")));
        }
        let n = n as Vertex;
        let g = FiniteGraph::from_edges(0..n, (0..n).map(|i| (i, (i + 1) % n)))?;
        Ok(Self::new(g.with_spec(json!({"type": "cycle", "n": n}))))
    }

    pub fn path(n: usize) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Invalid("path needs at least one vertex".into()));
        }
        let n = n as Vertex;
        let g = FiniteGraph::from_edges(0..n, (1..n).map(|i| (i - 1, i)))?;
        Ok(Self::new(g.with_spec(json!({"type": "path", "n": n}))))
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        let n = n as Vertex;
        let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
        Ok(Self::new(FiniteGraph::from_edges(0..n, edges)?))
    }

    /// The ball of the given radius around a vertex of the `degree`-regular
    /// tree, numbered in breadth-first order from the centre 0.
    pub fn regular_tree(degree: usize, radius: usize) -> Result<Self, GraphError> {
        let mut edges = Vec::new();
        let mut layer = vec![0 as Vertex];
        let mut next_id: Vertex = 1;
        for depth in 0..radius {
            let children = if depth == 0 { degree } else { degree.saturating_sub(1) };
            let mut next = Vec::new();
            for &v in &layer {
                for _ in 0..children {
                    edges.push((v, next_id));
                    next.push(next_id);
                    next_id += 1;
                }
            }
            layer = next;
        }
        let g = FiniteGraph::from_edges([0], edges)?;
        Ok(Self::new(
            g.with_spec(json!({"type": "tree", "degree": degree, "radius": radius})),
        ))
    }

    pub fn line() -> Self {
        Self::new(Line)
    }

    pub fn cayley_tree(rank: usize) -> Result<Self, GraphError> {
        Ok(Self::new(CayleyTree::new(rank)?))
    }

    pub fn family(&self) -> &dyn GraphFamily {
        self.family.as_ref()
    }

    pub fn kind(&self) -> &'static str {
        self.family.kind()
    }

    pub fn spec(&self) -> Value {
        self.family.spec()
    }

    pub fn is_finite(&self) -> bool {
        self.family.vertices().is_some()
    }

    pub fn vertices(&self) -> Option<&[Vertex]> {
        self.family.vertices()
    }

    pub fn vertex_count(&self) -> Option<usize> {
        self.family.vertices().map(<[Vertex]>::len)
    }

    pub fn base_vertex(&self) -> Vertex {
        self.family.base_vertex()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.family.contains(v)
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<(), GraphError> {
        if self.family.contains(v) {
            Ok(())
        } else {
            Err(GraphError::UnknownVertex(v))
        }
    }

    pub fn adjacent(&self, u: Vertex, w: Vertex) -> bool {
        self.family.contains(u) && self.family.contains(w) && self.family.adjacent(u, w)
    }

    /// `Lk(v)`.
    pub fn neighbors(&self, v: Vertex) -> Result<BTreeSet<Vertex>, GraphError> {
        self.check_vertex(v)?;
        Ok(self.family.neighbors(v).into_iter().collect())
    }

    /// `St(v) = Lk(v) ∪ {v}`.
    pub fn star(&self, v: Vertex) -> Result<BTreeSet<Vertex>, GraphError> {
        let mut s = self.neighbors(v)?;
        s.insert(v);
        Ok(s)
    }

    /// `Lk(E)`, the vertices adjacent to every member of `set`.
    pub fn common_link<'a>(
        &self,
        set: impl IntoIterator<Item = &'a Vertex>,
    ) -> Result<BTreeSet<Vertex>, GraphError> {
        let mut acc: Option<BTreeSet<Vertex>> = None;
        for &v in set {
            let lk = self.neighbors(v)?;
            acc = Some(match acc {
                None => lk,
                Some(a) => a.intersection(&lk).copied().collect(),
            });
        }
        acc.ok_or(GraphError::EmptyVertexSet)
    }

    /// Undirected edges `(u, w)` with `u < w`.
    pub fn edges(&self) -> Result<Vec<(Vertex, Vertex)>, GraphError> {
        let vs = self.require_finite("edge listing")?;
        Ok(vs
            .iter()
            .flat_map(|&u| {
                self.family
                    .neighbors(u)
                    .into_iter()
                    .filter(move |&w| u < w)
                    .map(move |w| (u, w))
            })
            .collect())
    }

    fn require_finite(&self, what: &'static str) -> Result<&[Vertex], GraphError> {
        self.family.vertices().ok_or(GraphError::Unsupported(what))
    }

    /// Length of a shortest circuit.
    pub fn girth(&self) -> Result<Girth, GraphError> {
        let vs = self.require_finite("girth")?;
        let mut best: Option<usize> = None;
        for &s in vs {
            let mut dist: BTreeMap<Vertex, (usize, Vertex)> = BTreeMap::from([(s, (0, s))]);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let (du, pu) = dist[&u];
                if best.is_some_and(|b| 2 * du >= b) {
                    break;
                }
                for w in self.family.neighbors(u) {
                    match dist.get(&w) {
                        None => {
                            dist.insert(w, (du + 1, u));
                            queue.push_back(w);
                        }
                        Some(&(dw, _)) if w != pu => {
                            let len = du + dw + 1;
                            best = Some(best.map_or(len, |b| b.min(len)));
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        Ok(best.map_or(Girth::Infinite, Girth::Finite))
    }

    /// Decides `Lk(v) ⊄ St(w)` for every ordered pair `v ≠ w`. Non-adjacent
    /// witnesses are reported before adjacent ones.
    pub fn is_untransvectable(&self) -> Result<Verdict<(Vertex, Vertex)>, GraphError> {
        Ok(match self.transvection_pairs()?.into_iter().next() {
            Some(pair) => Verdict::Fails(pair),
            None => Verdict::Holds,
        })
    }

    /// Every ordered pair `(v, w)`, `v ≠ w`, with `Lk(v) ⊆ St(w)`:
    /// non-adjacent pairs first, each group in lexicographic order.
    pub fn transvection_pairs(&self) -> Result<Vec<(Vertex, Vertex)>, GraphError> {
        let vs = self.require_finite("untransvectability")?;
        let links: BTreeMap<Vertex, BTreeSet<Vertex>> =
            vs.iter().map(|&v| (v, self.family.neighbors(v).into_iter().collect())).collect();
        let mut far = Vec::new();
        let mut near = Vec::new();
        for &v in vs {
            for &w in vs {
                if v == w {
                    continue;
                }
                let st_w = &links[&w];
                if links[&v].iter().all(|x| *x == w || st_w.contains(x)) {
                    if st_w.contains(&v) {
                        near.push((v, w));
                    } else {
                        far.push((v, w));
                    }
                }
            }
        }
        far.extend(near);
        Ok(far)
    }

    /// Decides `Lk(Lk(v)) = {v}` for every vertex.
    pub fn is_rigid(&self) -> Result<Verdict<Vertex>, GraphError> {
        let vs = self.require_finite("rigidity")?;
        if let Some(&v) = vs.iter().find(|&&v| self.family.neighbors(v).is_empty()) {
            return Err(GraphError::IsolatedVertex(v));
        }
        for &v in vs {
            let lk = self.neighbors(v)?;
            let lklk = self.common_link(&lk)?;
            if lklk.len() != 1 || !lklk.contains(&v) {
                return Ok(Verdict::Fails(v));
            }
        }
        Ok(Verdict::Holds)
    }

    /// Distances from `center` for every vertex within `radius`.
    pub fn ball(
        &self,
        center: Vertex,
        radius: usize,
        budget: usize,
    ) -> Result<BTreeMap<Vertex, usize>, GraphError> {
        self.check_vertex(center)?;
        let mut dist = BTreeMap::from([(center, 0)]);
        let mut queue = VecDeque::from([center]);
        while let Some(u) = queue.pop_front() {
            let d = dist[&u];
            if d == radius {
                continue;
            }
            for w in self.family.neighbors(u) {
                if !dist.contains_key(&w) {
                    if dist.len() >= budget {
                        return Err(GraphError::Budget(budget));
                    }
                    dist.insert(w, d + 1);
                    queue.push_back(w);
                }
            }
        }
        Ok(dist)
    }

    /// The finite subgraph induced on `set`.
    pub fn induced_subgraph(&self, set: &BTreeSet<Vertex>) -> Result<Graph, GraphError> {
        let mut adjacency = BTreeMap::new();
        for &v in set {
            self.check_vertex(v)?;
            let nbrs: BTreeSet<Vertex> = self
                .family
                .neighbors(v)
                .into_iter()
                .filter(|w| set.contains(w))
                .collect();
            adjacency.insert(v, nbrs);
        }
        Graph::from_adjacency(adjacency)
    }

    /// Connectivity. Exact for finite graphs; lazy graphs report how many
    /// vertices a breadth-first search from the base vertex reached.
    pub fn connectivity(&self, budget: usize) -> BudgetedCheck {
        match self.family.vertices() {
            Some([]) => BudgetedCheck::Holds,
            Some(vs) => match self.ball(vs[0], usize::MAX, usize::MAX) {
                Ok(reached) if reached.len() == vs.len() => BudgetedCheck::Holds,
                _ => BudgetedCheck::Fails,
            },
            None => {
                let explored = match self.ball(self.base_vertex(), usize::MAX, budget) {
                    Ok(reached) => reached.len(),
                    Err(_) => budget,
                };
                BudgetedCheck::VerifiedWithinBudget { explored }
            }
        }
    }

    /// Local finiteness. Every neighbor list is finite by construction, so
    /// lazy graphs report the number of vertices whose lists were generated.
    pub fn local_finiteness(&self, budget: usize) -> BudgetedCheck {
        match self.family.vertices() {
            Some(_) => BudgetedCheck::Holds,
            None => self.connectivity(budget),
        }
    }

    pub fn min_degree(&self) -> Result<Option<usize>, GraphError> {
        let vs = self.require_finite("minimum degree")?;
        Ok(vs.iter().map(|&v| self.family.neighbors(v).len()).min())
    }
}

/// The standard graph families, keyed by their `"type"` field.
pub fn registry() -> &'static Registry<Graph> {
    static REGISTRY: OnceLock<Registry<Graph>> = OnceLock::new();
    REGISTRY.get_or_init(|| {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct FiniteSpec {
            #[allow(dead_code)]
            r#type: String,
            #[serde(default)]
            vertices: Vec<Vertex>,
            #[serde(default)]
            edges: Vec<(Vertex, Vertex)>,
            #[serde(default)]
            adjacency: Option<BTreeMap<Vertex, BTreeSet<Vertex>>>,
        }
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct SizeSpec {
            #[allow(dead_code)]
            r#type: String,
            n: usize,
        }
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct TreeSpec {
            #[allow(dead_code)]
            r#type: String,
            degree: usize,
            radius: usize,
        }
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct RankSpec {
            #[allow(dead_code)]
            r#type: String,
            rank: usize,
        }
        let err = |e: GraphError| e.to_string();

        let mut r = Registry::new("graph", "type");
        r.register_typed("finite", move |p: FiniteSpec, _| match p.adjacency {
            Some(mut adj) => {
                if !p.edges.is_empty() {
                    return Err("give either `edges` or `adjacency`, not both".into());
                }
                for v in p.vertices {
                    adj.entry(v).or_default();
                }
                Graph::from_adjacency(adj).map_err(err)
            }
            None => Graph::from_edges(p.vertices, p.edges).map_err(err),
        })
        .register_typed("cycle", move |p: SizeSpec, _| Graph::cycle(p.n).map_err(err))
        .register_typed("path", move |p: SizeSpec, _| Graph::path(p.n).map_err(err))
        .register_typed("complete", move |p: SizeSpec, _| Graph::complete(p.n).map_err(err))
        .register_typed("tree", move |p: TreeSpec, _| {
            Graph::regular_tree(p.degree, p.radius).map_err(err)
        })
        .register("line", |_, _| Ok(Graph::line()))
        .register_typed("cayley_tree", move |p: RankSpec, _| {
            Graph::cayley_tree(p.rank).map_err(err)
        });
        r
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[Vertex]) -> BTreeSet<Vertex> {
        xs.iter().copied().collect()
    }

    #[test]
    fn builders() {
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(c5.vertex_count(), Some(5));
        assert!(c5.vertices().unwrap().iter().all(|&v| c5.neighbors(v).unwrap().len() == 2));
        assert_eq!(Graph::regular_tree(3, 2).unwrap().vertex_count(), Some(10));
        assert!(Graph::cycle(2).is_err());
    }

    #[test]
    fn asymmetric_adjacency_is_rejected() {
        let adj = BTreeMap::from([(0, set(&[1])), (1, set(&[]))]);
        let err = Graph::from_adjacency(adj).unwrap_err();
        assert_eq!(err, GraphError::AsymmetricAdjacency { from: 0, to: 1 });
        assert!(err.to_string().contains("asymmetric adjacency"));
        let err = Graph::from_adjacency(BTreeMap::from([(0, set(&[0]))])).unwrap_err();
        assert_eq!(err, GraphError::SelfLoop(0));
    }

    #[test]
    fn links_and_stars() {
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(c5.neighbors(0).unwrap(), set(&[1, 4]));
        assert_eq!(c5.star(0).unwrap(), set(&[0, 1, 4]));
        assert_eq!(c5.common_link(&[0, 1]).unwrap(), set(&[]));
        let p3 = Graph::path(3).unwrap();
        assert_eq!(p3.common_link(&[0, 2]).unwrap(), set(&[1]));
        assert_eq!(c5.neighbors(9), Err(GraphError::UnknownVertex(9)));
        assert_eq!(c5.common_link(&[]), Err(GraphError::EmptyVertexSet));
    }

    #[test]
    fn girth_examples() {
        assert_eq!(Graph::cycle(5).unwrap().girth().unwrap(), Girth::Finite(5));
        assert_eq!(Graph::path(4).unwrap().girth().unwrap(), Girth::Infinite);
        assert_eq!(Graph::complete(4).unwrap().girth().unwrap(), Girth::Finite(3));
        assert_eq!(
            Graph::line().girth(),
            Err(GraphError::Unsupported("girth"))
        );
    }

    #[test]
    fn untransvectable_examples() {
        assert!(Graph::cycle(5).unwrap().is_untransvectable().unwrap().holds());
        let p3 = Graph::path(3).unwrap();
        assert_eq!(p3.is_untransvectable().unwrap(), Verdict::Fails((0, 2)));
        assert!(Graph::path(1).unwrap().is_untransvectable().unwrap().holds());
    }

    #[test]
    fn rigid_examples() {
        assert!(Graph::cycle(5).unwrap().is_rigid().unwrap().holds());
        assert_eq!(Graph::cycle(4).unwrap().is_rigid().unwrap(), Verdict::Fails(0));
        assert!(Graph::path(2).unwrap().is_rigid().unwrap().holds());
        let isolated = Graph::from_edges([2], [(0, 1)]).unwrap();
        assert_eq!(isolated.is_rigid(), Err(GraphError::IsolatedVertex(2)));
    }

    #[test]
    fn lazy_graphs() {
        let line = Graph::line();
        assert_eq!(line.neighbors(-3).unwrap(), set(&[-4, -2]));
        let t = Graph::cayley_tree(2).unwrap();
        assert_eq!(t.neighbors(0).unwrap(), set(&[1, 2, 3, 4]));
        assert_eq!(t.ball(0, 2, 1000).unwrap().len(), 17);
        assert!(matches!(
            t.connectivity(100),
            BudgetedCheck::VerifiedWithinBudget { explored: 100 }
        ));
        assert_eq!(t.ball(0, 10, 50), Err(GraphError::Budget(50)));
    }

    #[test]
    fn spec_parsing() {
        let g = Graph::from_spec(&json!({"type": "finite", "edges": [[0, 1], [1, 2]]})).unwrap();
        assert_eq!(g.edges().unwrap(), vec![(0, 1), (1, 2)]);
        let err = Graph::from_spec(&json!({"type": "finite", "adjacency": {"0": [1], "1": []}}))
            .unwrap_err();
        assert!(err.to_string().contains("asymmetric adjacency"), "{err}");
        let err = Graph::from_spec(&json!({"type": "cycle"})).unwrap_err();
        assert!(err.to_string().contains("`n`"), "{err}");
        let err = Graph::from_spec(&json!({"type": "tree", "degree": 3})).unwrap_err();
        assert!(err.to_string().contains("`radius`"), "{err}");
        for spec in [json!({"type": "line"}), json!({"type": "cayley_tree", "rank": 2})] {
            assert!(!Graph::from_spec(&spec).unwrap().is_finite());
        }
    }
}
