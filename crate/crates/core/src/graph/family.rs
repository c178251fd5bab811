use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde_json::{json, Value};

use super::{GraphError, Vertex};
use crate::group::free;

/// One way of presenting a simple graph: explicitly, or by a neighbor
/// function on an infinite vertex set.
pub trait GraphFamily: fmt::Debug + Send + Sync {
    fn kind(&self) -> &'static str;

    fn spec(&self) -> Value;

    fn contains(&self, v: Vertex) -> bool;

    /// Sorted neighbors of a vertex known to belong to the graph.
    fn neighbors(&self, v: Vertex) -> Vec<Vertex>;

    fn adjacent(&self, u: Vertex, w: Vertex) -> bool {
        self.neighbors(u).binary_search(&w).is_ok()
    }

    /// Sorted vertex list, for finite graphs.
    fn vertices(&self) -> Option<&[Vertex]>;

    /// The vertex that balls on infinite graphs are centred on.
    fn base_vertex(&self) -> Vertex;
}

/// A finite simple graph stored as sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGraph {
    vertices: Vec<Vertex>,
    adjacency: BTreeMap<Vertex, Vec<Vertex>>,
    spec: Value,
}

impl FiniteGraph {
    /// Validates an explicit adjacency map: no loops, symmetric, every
    /// neighbor is a vertex.
    pub fn from_adjacency(adjacency: BTreeMap<Vertex, BTreeSet<Vertex>>) -> Result<Self, GraphError> {
        for (&v, nbrs) in &adjacency {
            for &w in nbrs {
                if v == w {
                    return Err(GraphError::SelfLoop(v));
                }
                match adjacency.get(&w) {
                    None => return Err(GraphError::UnknownVertex(w)),
                    Some(back) if !back.contains(&v) => {
                        return Err(GraphError::AsymmetricAdjacency { from: v, to: w })
                    }
                    Some(_) => {}
                }
            }
        }
        let edges: Vec<[Vertex; 2]> = adjacency
            .iter()
            .flat_map(|(&v, n)| n.iter().filter(move |&&w| v < w).map(move |&w| [v, w]))
            .collect();
        let vertices: Vec<Vertex> = adjacency.keys().copied().collect();
        Ok(Self {
            spec: json!({"type": "finite", "vertices": vertices, "edges": edges}),
            vertices,
            adjacency: adjacency
                .into_iter()
                .map(|(v, n)| (v, n.into_iter().collect()))
                .collect(),
        })
    }

    /// Builds a graph from undirected edges. Endpoints are added to the vertex
    /// set automatically; `extra` adds isolated vertices.
    pub fn from_edges(
        extra: impl IntoIterator<Item = Vertex>,
        edges: impl IntoIterator<Item = (Vertex, Vertex)>,
    ) -> Result<Self, GraphError> {
        let mut adjacency: BTreeMap<Vertex, BTreeSet<Vertex>> =
            extra.into_iter().map(|v| (v, BTreeSet::new())).collect();
        for (u, w) in edges {
            if u == w {
                return Err(GraphError::SelfLoop(u));
            }
            adjacency.entry(u).or_default().insert(w);
            adjacency.entry(w).or_default().insert(u);
        }
        Self::from_adjacency(adjacency)
    }

    pub(super) fn with_spec(mut self, spec: Value) -> Self {
        self.spec = spec;
        self
    }
}

impl GraphFamily for FiniteGraph {
    fn kind(&self) -> &'static str {
        "finite"
    }

    fn spec(&self) -> Value {
        self.spec.clone()
    }

    fn contains(&self, v: Vertex) -> bool {
        self.adjacency.contains_key(&v)
    }

    fn neighbors(&self, v: Vertex) -> Vec<Vertex> {
        self.adjacency[&v].clone()
    }

    fn adjacent(&self, u: Vertex, w: Vertex) -> bool {
        self.adjacency
            .get(&u)
            .is_some_and(|n| n.binary_search(&w).is_ok())
    }

    fn vertices(&self) -> Option<&[Vertex]> {
        Some(&self.vertices)
    }

    fn base_vertex(&self) -> Vertex {
        self.vertices.first().copied().unwrap_or(0)
    }
}

/// The bi-infinite path on the integers.
#[derive(Debug, Clone, Copy, Default)]
pub struct Line;

impl GraphFamily for Line {
    fn kind(&self) -> &'static str {
        "line"
    }

    fn spec(&self) -> Value {
        json!({"type": "line"})
    }

    fn contains(&self, _v: Vertex) -> bool {
        true
    }

    fn neighbors(&self, v: Vertex) -> Vec<Vertex> {
        vec![v - 1, v + 1]
    }

    fn adjacent(&self, u: Vertex, w: Vertex) -> bool {
        u.abs_diff(w) == 1
    }

    fn vertices(&self) -> Option<&[Vertex]> {
        None
    }

    fn base_vertex(&self) -> Vertex {
        0
    }
}

/// The Cayley graph of the free group on its basis, with `w ~ w s` for every
/// generator `s`. Vertex `n` is the n-th reduced word in length-then-lex order.
#[derive(Debug, Clone, Copy)]
pub struct CayleyTree {
    rank: usize,
}

impl CayleyTree {
    pub fn new(rank: usize) -> Result<Self, GraphError> {
        if rank == 0 || rank > 26 {
            return Err(GraphError::Invalid(format!("cayley tree rank {rank} outside 1..=26")));
        }
        Ok(Self { rank })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn word(&self, v: Vertex) -> Vec<free::Letter> {
        free::decode(self.rank, v).expect("vertex belongs to the tree")
    }

    pub fn vertex(&self, word: &[free::Letter]) -> Vertex {
        free::encode(self.rank, word).expect("word rank overflows i64")
    }
}

impl GraphFamily for CayleyTree {
    fn kind(&self) -> &'static str {
        "cayley_tree"
    }

    fn spec(&self) -> Value {
        json!({"type": "cayley_tree", "rank": self.rank})
    }

    fn contains(&self, v: Vertex) -> bool {
        v >= 0
    }

    fn neighbors(&self, v: Vertex) -> Vec<Vertex> {
        let w = self.word(v);
        let mut out: Vec<Vertex> = (0..2 * self.rank as free::Letter)
            .map(|l| {
                let mut x = w.clone();
                free::append_reduced(&mut x, [l]);
                self.vertex(&x)
            })
            .collect();
        out.sort_unstable();
        out
    }

    fn adjacent(&self, u: Vertex, w: Vertex) -> bool {
        if u < 0 || w < 0 {
            return false;
        }
        let (a, b) = (self.word(u), self.word(w));
        let (short, long) = if a.len() < b.len() { (a, b) } else { (b, a) };
        long.len() == short.len() + 1 && long.starts_with(&short)
    }

    fn vertices(&self) -> Option<&[Vertex]> {
        None
    }

    fn base_vertex(&self) -> Vertex {
        0
    }
}
