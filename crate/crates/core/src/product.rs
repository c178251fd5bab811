//! Graph products of groups in canonical normal form.
//!
//! A [`GpElement`] stores the syllables of one normal form: an irreducible
//! vertex sequence with non-identity vertex-group elements. Among the
//! shuffle-equivalent normal forms of an element the stored one has the
//! lexicographically least vertex word. It is computed greedily: repeatedly
//! take the smallest vertex whose syllable can be moved to the front, i.e.
//! whose predecessors all lie in its link. Elements are therefore equal iff
//! their syllable vectors are equal.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::graph::{Graph, GraphError, Vertex};
use crate::group::{Group, GroupElement, GroupError};

/// Default syllable-length bound for [`GraphProduct::shuffle_class`].
pub const SHUFFLE_BOUND: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProductError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("no vertex group assigned to vertex {0}")]
    NoVertexGroup(Vertex),
    #[error("{0} is not in canonical normal form for this graph product")]
    NotCanonical(String),
    #[error("shuffle class enumeration limited to {limit} syllables, element has {len}")]
    Budget { limit: usize, len: usize },
    #[error("vertex map does not preserve adjacency between {0} and {1}")]
    NotAdjacencyPreserving(Vertex, Vertex),
    #[error("vertex map is not injective: {0} and {1} both map to {2}")]
    NotInjective(Vertex, Vertex, Vertex),
    #[error("vertex map sends {from} to {to}, whose vertex group differs")]
    GroupMismatch { from: Vertex, to: Vertex },
    #[error("cannot parse syllable {0:?}: expected `vertex:element`")]
    Syntax(String),
}

/// One factor `g ∈ G_v`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Syllable {
    pub vertex: Vertex,
    pub elem: GroupElement,
}

impl Syllable {
    pub fn new(vertex: Vertex, elem: GroupElement) -> Self {
        Self { vertex, elem }
    }
}

/// A graph-product element in canonical normal form. The empty sequence is
/// the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GpElement {
    syllables: Vec<Syllable>,
}

impl GpElement {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// `‖g‖`.
    pub fn syllable_length(&self) -> usize {
        self.syllables.len()
    }

    /// `supp g`.
    pub fn support(&self) -> BTreeSet<Vertex> {
        self.syllables.iter().map(|s| s.vertex).collect()
    }

    pub fn vertex_word(&self) -> Vec<Vertex> {
        self.syllables.iter().map(|s| s.vertex).collect()
    }
}

/// Vertex groups of a graph product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VertexGroups {
    /// Every vertex carries the same group, as in graph-wreath products.
    Uniform(Group),
    PerVertex(BTreeMap<Vertex, Group>),
}

/// How `x · h` relates to `h` for a single syllable `x` at `v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LeftProduct {
    /// No front-movable `v`-syllable: `x` becomes a new syllable.
    Extend,
    /// `x` merges into the front-movable syllable at this index.
    Merge(usize),
    /// `x` cancels the front-movable syllable at this index.
    Cancel(usize),
}

/// A graph product `G_Γ` over a (possibly lazy) graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphProduct {
    graph: Graph,
    groups: VertexGroups,
}

impl GraphProduct {
    pub fn uniform(graph: Graph, group: Group) -> Self {
        Self {
            graph,
            groups: VertexGroups::Uniform(group),
        }
    }

    /// Heterogeneous vertex groups; every vertex of the finite graph needs one.
    pub fn per_vertex(graph: Graph, groups: BTreeMap<Vertex, Group>) -> Result<Self, ProductError> {
        let vs = graph
            .vertices()
            .ok_or(GraphError::Unsupported("per-vertex group assignment"))?;
        if let Some(&v) = vs.iter().find(|v| !groups.contains_key(v)) {
            return Err(ProductError::NoVertexGroup(v));
        }
        Ok(Self {
            graph,
            groups: VertexGroups::PerVertex(groups),
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn groups(&self) -> &VertexGroups {
        &self.groups
    }

    pub fn uniform_group(&self) -> Option<&Group> {
        match &self.groups {
            VertexGroups::Uniform(g) => Some(g),
            VertexGroups::PerVertex(_) => None,
        }
    }

    pub fn vertex_group(&self, v: Vertex) -> Result<&Group, ProductError> {
        self.graph.check_vertex(v)?;
        match &self.groups {
            VertexGroups::Uniform(g) => Ok(g),
            VertexGroups::PerVertex(m) => m.get(&v).ok_or(ProductError::NoVertexGroup(v)),
        }
    }

    fn check_syllable(&self, s: &Syllable) -> Result<&Group, ProductError> {
        let g = self.vertex_group(s.vertex)?;
        g.check(&s.elem)?;
        Ok(g)
    }

    /// Validates that `a` is a canonical normal form of this product.
    pub fn check(&self, a: &GpElement) -> Result<(), ProductError> {
        for s in &a.syllables {
            let g = self.check_syllable(s)?;
            if g.is_identity(&s.elem) {
                return Err(ProductError::NotCanonical(format!("{a:?} has an identity syllable")));
            }
        }
        let word: Vec<Vertex> = a.vertex_word();
        if !self.is_irreducible(&word) || self.canonical_order(a.syllables.clone()) != a.syllables {
            return Err(ProductError::NotCanonical(format!("{a:?}")));
        }
        Ok(())
    }

    /// Irreducibility of a vertex sequence: equal vertices are always
    /// separated by some vertex not adjacent to them.
    pub fn is_irreducible(&self, word: &[Vertex]) -> bool {
        word.iter().enumerate().all(|(i, &v)| {
            match word[i + 1..].iter().position(|&w| w == v || !self.graph.adjacent(v, w)) {
                Some(k) => word[i + 1 + k] != v,
                None => true,
            }
        })
    }

    /// Multiplies `s` onto the right of a normal form, keeping it a normal
    /// form: the new syllable merges with the last `v`-syllable whose
    /// successors all commute with `v`, or is appended.
    fn push_right(&self, seq: &mut Vec<Syllable>, s: Syllable, group: &Group) {
        if group.is_identity(&s.elem) {
            return;
        }
        for j in (0..seq.len()).rev() {
            let u = seq[j].vertex;
            if u == s.vertex {
                let merged = group.mul(&seq[j].elem, &s.elem);
                if group.is_identity(&merged) {
                    seq.remove(j);
                } else {
                    seq[j].elem = merged;
                }
                return;
            }
            if !self.graph.adjacent(u, s.vertex) {
                break;
            }
        }
        seq.push(s);
    }

    /// Reorders a normal form into the lex-least vertex word of its shuffle class.
    fn canonical_order(&self, mut rest: Vec<Syllable>) -> Vec<Syllable> {
        let mut out = Vec::with_capacity(rest.len());
        while !rest.is_empty() {
            let mut pick: Option<usize> = None;
            for i in 0..rest.len() {
                let v = rest[i].vertex;
                if pick.is_some_and(|p| rest[p].vertex <= v) {
                    continue;
                }
                if rest[..i].iter().all(|s| self.graph.adjacent(s.vertex, v)) {
                    pick = Some(i);
                }
            }
            out.push(rest.remove(pick.expect("the first syllable is always front-movable")));
        }
        out
    }

    fn element_of_normal_form(&self, seq: Vec<Syllable>) -> GpElement {
        GpElement {
            syllables: self.canonical_order(seq),
        }
    }

    /// Canonical normal form of the product of `word`. Identity syllables are
    /// dropped.
    pub fn normalize(&self, word: &[Syllable]) -> Result<GpElement, ProductError> {
        let mut seq = Vec::with_capacity(word.len());
        for s in word {
            let g = self.check_syllable(s)?;
            self.push_right(&mut seq, s.clone(), g);
        }
        Ok(self.element_of_normal_form(seq))
    }

    pub fn syllable(&self, vertex: Vertex, elem: GroupElement) -> Result<GpElement, ProductError> {
        self.normalize(&[Syllable::new(vertex, elem)])
    }

    pub fn multiply(&self, a: &GpElement, b: &GpElement) -> Result<GpElement, ProductError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    pub(crate) fn mul(&self, a: &GpElement, b: &GpElement) -> GpElement {
        let mut seq = a.syllables.clone();
        for s in &b.syllables {
            let g = self.vertex_group(s.vertex).expect("checked element");
            self.push_right(&mut seq, s.clone(), g);
        }
        self.element_of_normal_form(seq)
    }

    pub fn invert(&self, a: &GpElement) -> Result<GpElement, ProductError> {
        self.check(a)?;
        Ok(self.inv(a))
    }

    pub(crate) fn inv(&self, a: &GpElement) -> GpElement {
        let seq = a
            .syllables
            .iter()
            .rev()
            .map(|s| {
                let g = self.vertex_group(s.vertex).expect("checked element");
                Syllable::new(s.vertex, g.inv(&s.elem))
            })
            .collect();
        self.element_of_normal_form(seq)
    }

    /// Index of the syllable at `v` that some normal form of `a` begins with.
    pub fn leading_index(&self, a: &GpElement, v: Vertex) -> Option<usize> {
        let i = a.syllables.iter().position(|s| s.vertex == v)?;
        a.syllables[..i]
            .iter()
            .all(|s| self.graph.adjacent(s.vertex, v))
            .then_some(i)
    }

    /// The element `h₁ ∈ G_v` such that some normal form of `a` begins with
    /// `(v, h₁)`, or the identity of `G_v`.
    pub fn leading_syllable(&self, a: &GpElement, v: Vertex) -> Result<GroupElement, ProductError> {
        let g = self.vertex_group(v)?;
        Ok(match self.leading_index(a, v) {
            Some(i) => a.syllables[i].elem.clone(),
            None => g.identity(),
        })
    }

    /// Every normal form of `a`: the closure of its syllable sequence under
    /// swaps of adjacent commuting syllables.
    pub fn shuffle_class(
        &self,
        a: &GpElement,
        bound: usize,
    ) -> Result<BTreeSet<Vec<Syllable>>, ProductError> {
        if a.syllable_length() > bound {
            return Err(ProductError::Budget {
                limit: bound,
                len: a.syllable_length(),
            });
        }
        let mut seen = BTreeSet::from([a.syllables.clone()]);
        let mut queue = VecDeque::from([a.syllables.clone()]);
        while let Some(seq) = queue.pop_front() {
            for i in 0..seq.len().saturating_sub(1) {
                if self.graph.adjacent(seq[i].vertex, seq[i + 1].vertex) {
                    let mut next = seq.clone();
                    next.swap(i, i + 1);
                    if seen.insert(next.clone()) {
                        queue.push_back(next);
                    }
                }
            }
        }
        Ok(seen)
    }

    /// Relabels every syllable `(v, h)` as `(φ(v), h)`. `φ` must preserve
    /// adjacency (both ways) and be injective on `supp a ∪ Lk(supp a)`.
    pub fn bernoulli(
        &self,
        phi: impl Fn(Vertex) -> Vertex,
        a: &GpElement,
    ) -> Result<GpElement, ProductError> {
        let support = a.support();
        let mut region = support.clone();
        for &v in &support {
            region.extend(self.graph.neighbors(v)?);
        }
        let image: BTreeMap<Vertex, Vertex> = region.iter().map(|&v| (v, phi(v))).collect();
        let mut preimage: BTreeMap<Vertex, Vertex> = BTreeMap::new();
        for (&v, &fv) in &image {
            self.graph.check_vertex(fv)?;
            if let Some(&u) = preimage.get(&fv) {
                return Err(ProductError::NotInjective(u, v, fv));
            }
            preimage.insert(fv, v);
        }
        for &u in &support {
            if self.vertex_group(u)? != self.vertex_group(image[&u])? {
                return Err(ProductError::GroupMismatch { from: u, to: image[&u] });
            }
            for &w in &region {
                if self.graph.adjacent(u, w) != self.graph.adjacent(image[&u], image[&w]) {
                    return Err(ProductError::NotAdjacencyPreserving(u, w));
                }
            }
        }
        let seq = a
            .syllables
            .iter()
            .map(|s| Syllable::new(image[&s.vertex], s.elem.clone()))
            .collect();
        Ok(self.element_of_normal_form(seq))
    }

    /// All elements of syllable length at most `radius` on a finite graph.
    /// Infinite vertex groups contribute their elements of word length at
    /// most `elem_radius`.
    pub fn syllable_ball(&self, radius: usize, elem_radius: u64) -> Result<BTreeSet<GpElement>, ProductError> {
        let vertices = self
            .graph
            .vertices()
            .ok_or(ProductError::Graph(GraphError::Unsupported("syllable balls")))?;
        let mut letters = Vec::new();
        for &v in vertices {
            let g = self.vertex_group(v)?;
            let elems: Vec<GroupElement> = match g.elements() {
                Some(all) => all,
                None => g.ball(elem_radius).into_iter().collect(),
            };
            for x in elems {
                if !g.is_identity(&x) {
                    letters.push(GpElement {
                        syllables: vec![Syllable::new(v, x)],
                    });
                }
            }
        }
        let mut ball = BTreeSet::from([GpElement::identity()]);
        let mut layer = vec![GpElement::identity()];
        for _ in 0..radius {
            let mut next = Vec::new();
            for a in &layer {
                for s in &letters {
                    let b = self.mul(a, s);
                    if b.syllable_length() == a.syllable_length() + 1 && ball.insert(b.clone()) {
                        next.push(b);
                    }
                }
            }
            layer = next;
        }
        Ok(ball)
    }

    /// [`Self::bernoulli`] for a map already known to be a graph automorphism
    /// preserving vertex groups.
    pub(crate) fn relabel(&self, phi: impl Fn(Vertex) -> Vertex, a: &GpElement) -> GpElement {
        let seq = a
            .syllables
            .iter()
            .map(|s| Syllable::new(phi(s.vertex), s.elem.clone()))
            .collect();
        self.element_of_normal_form(seq)
    }

    /// Which of the three shapes `x · h` takes, for a syllable `x`.
    pub fn classify_left_product(
        &self,
        x: &Syllable,
        h: &GpElement,
    ) -> Result<LeftProduct, ProductError> {
        let g = self.check_syllable(x)?;
        self.check(h)?;
        Ok(match self.leading_index(h, x.vertex) {
            None => LeftProduct::Extend,
            Some(i) if g.is_identity(&g.mul(&x.elem, &h.syllables[i].elem)) => LeftProduct::Cancel(i),
            Some(i) => LeftProduct::Merge(i),
        })
    }

    /// Parses `"v1:g1 v2:g2 ..."` into a raw syllable list.
    pub fn parse_word(&self, text: &str) -> Result<Vec<Syllable>, ProductError> {
        let text = text.trim();
        if text.is_empty() || text == "e" {
            return Ok(Vec::new());
        }
        text.split_whitespace()
            .map(|tok| {
                let (v, g) = tok
                    .split_once(':')
                    .ok_or_else(|| ProductError::Syntax(tok.to_string()))?;
                let v: Vertex = v.parse().map_err(|_| ProductError::Syntax(tok.to_string()))?;
                let group = self.vertex_group(v)?;
                Ok(Syllable::new(v, group.parse(g)?))
            })
            .collect()
    }

    pub fn parse(&self, text: &str) -> Result<GpElement, ProductError> {
        self.normalize(&self.parse_word(text)?)
    }

    pub fn format(&self, a: &GpElement) -> String {
        if a.is_identity() {
            return "e".to_string();
        }
        a.syllables
            .iter()
            .map(|s| match self.vertex_group(s.vertex) {
                Ok(g) => format!("{}:{}", s.vertex, g.format(&s.elem)),
                Err(_) => format!("{}:{:?}", s.vertex, s.elem),
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for Syllable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{:?}", self.vertex, self.elem)
    }
}
