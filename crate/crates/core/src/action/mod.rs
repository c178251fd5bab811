//! Group actions on graphs and the graph-wreath product.
//!
//! A [`GraphAction`] pairs a group and a graph with an [`ActionFamily`]
//! that says how group elements move vertices. Finite graphs take explicit
//! generator permutations; infinite graphs use closed-form families (shift on
//! the line, left multiplication on a Cayley tree).
//!
//! Wherever a question about an infinite group or graph can only be answered
//! by truncated search, the answer is three-valued and `Inconclusive` is kept
//! distinct from a negative answer.

mod family;
mod quotient;
mod wreath;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde_json::Value;
use thiserror::Error;

use crate::graph::{Graph, GraphError, MultigraphError, Vertex};
use crate::group::{Group, GroupElement, GroupError};
use crate::product::ProductError;
use crate::registry::{Registry, SpecError};
use crate::verdict::Verdict;

pub use family::{ActionFamily, LeftMultiplication, PermutationAction, Shift};
pub use wreath::{WreathElement, WreathProduct};

/// Radius of the ball on which lazy actions are validated and orbit data is
/// certified.
pub const CERTIFICATION_RADIUS: usize = 4;
const BALL_BUDGET: usize = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ActionError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Product(#[from] ProductError),
    #[error(transparent)]
    Multigraph(#[from] MultigraphError),
    #[error("invalid action: {0}")]
    Invalid(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("context mismatch: {0}")]
    Mismatch(String),
}

/// Vertex orbits of an action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbits {
    /// Least vertex of each orbit (finite graphs) or the certified
    /// representatives (infinite graphs), in increasing order.
    pub representatives: Vec<Vertex>,
    /// The orbits themselves, for finite graphs.
    pub classes: Option<Vec<BTreeSet<Vertex>>>,
    /// For infinite graphs: radius of the ball on which every vertex was
    /// matched to exactly one representative.
    pub certified_radius: Option<usize>,
}

impl Orbits {
    pub fn count(&self) -> usize {
        self.representatives.len()
    }
}

/// A stabilizer computed exactly, or only within a ball of the group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElementSet {
    Exact(BTreeSet<GroupElement>),
    BoundedSearch {
        found: BTreeSet<GroupElement>,
        radius: u64,
    },
}

impl ElementSet {
    pub fn found(&self) -> &BTreeSet<GroupElement> {
        match self {
            ElementSet::Exact(s) | ElementSet::BoundedSearch { found: s, .. } => s,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, ElementSet::Exact(_))
    }
}

/// Setwise and pointwise stabilizers `G^E` and `G₀^E` of a finite vertex set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isotropy {
    pub setwise: ElementSet,
    pub pointwise: ElementSet,
}

/// The action hypotheses used by the rigidity and bi-exactness results.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypothesisReport {
    /// Every vertex stabilizer is trivial; witness `(g ≠ e, v)` with `g·v = v`.
    pub free: Verdict<(GroupElement, Vertex)>,
    /// Every vertex stabilizer is finite; witness a vertex with infinite stabilizer.
    pub finite_isotropy: Verdict<Vertex>,
    pub orbit_count: usize,
    /// Any `g` fixing `St(v)` pointwise is trivial; witness `(g ≠ e, v)`.
    pub fixes_star_implies_trivial: Verdict<(GroupElement, Vertex)>,
}

/// A group acting on a graph by automorphisms.
#[derive(Clone)]
pub struct GraphAction {
    group: Group,
    graph: Graph,
    family: Arc<dyn ActionFamily>,
    representatives: Option<Vec<Vertex>>,
}

impl fmt::Debug for GraphAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GraphAction")
            .field("group", &self.group)
            .field("graph", &self.graph)
            .field("family", &self.family.spec())
            .finish()
    }
}

impl PartialEq for GraphAction {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group
            && self.graph == other.graph
            && (Arc::ptr_eq(&self.family, &other.family) || self.family.spec() == other.family.spec())
    }
}

impl Eq for GraphAction {}

impl GraphAction {
    /// Wraps a family and validates it: exhaustively on finite graphs, on the
    /// certification ball otherwise.
    pub fn new(
        group: Group,
        graph: Graph,
        family: impl ActionFamily + 'static,
        representatives: Option<Vec<Vertex>>,
    ) -> Result<Self, ActionError> {
        let action = Self {
            representatives: representatives.or_else(|| family.default_representatives()),
            group,
            graph,
            family: Arc::new(family),
        };
        if !action.graph.is_finite() {
            action.validate_on_ball()?;
        }
        Ok(action)
    }

    /// Listed generators act by the given vertex permutations.
    pub fn permutation(group: Group, graph: Graph, images: Vec<Vec<Vertex>>) -> Result<Self, ActionError> {
        let family = PermutationAction::new(&group, &graph, images)?;
        Self::new(group, graph, family, None)
    }

    /// The trivial group acting on a finite graph.
    pub fn trivial(graph: Graph) -> Result<Self, ActionError> {
        Self::permutation(Group::cyclic(1)?, graph, Vec::new())
    }

    /// `Z/n` rotating the n-cycle by `step`.
    pub fn rotation(n: usize, order: u64, step: usize) -> Result<Self, ActionError> {
        let graph = Graph::cycle(n)?;
        let image = (0..n).map(|v| ((v + step) % n) as Vertex).collect();
        Self::permutation(Group::cyclic(order)?, graph, vec![image])
    }

    pub fn shift() -> Self {
        Self::new(Group::integers(), Graph::line(), Shift, None).expect("shift is an action")
    }

    pub fn left_multiplication(rank: usize) -> Result<Self, ActionError> {
        Self::new(
            Group::free(rank)?,
            Graph::cayley_tree(rank)?,
            LeftMultiplication::new(rank)?,
            None,
        )
    }

    pub fn from_spec(spec: &Value) -> Result<Self, SpecError> {
        let invalid = |name: &str, message: String| SpecError::Invalid {
            what: "action",
            name: name.to_string(),
            message,
        };
        let name = spec.get("family").and_then(Value::as_str).unwrap_or("permutation");
        let rank = spec.get("rank").and_then(Value::as_u64);
        let group = match spec.get("group") {
            Some(g) => Group::from_spec(g)?,
            None => match name {
                "shift" => Group::integers(),
                "left_mult" => Group::free(rank.unwrap_or(2) as usize)
                    .map_err(|e| invalid(name, e.to_string()))?,
                _ => return Err(invalid(name, "missing field `group`".into())),
            },
        };
        let graph = match spec.get("graph") {
            Some(g) => Graph::from_spec(g)?,
            None => match name {
                "shift" => Graph::line(),
                "left_mult" => {
                    let r = group.spec().get("rank").and_then(Value::as_u64).unwrap_or(2);
                    Graph::cayley_tree(r as usize).map_err(|e| invalid(name, e.to_string()))?
                }
                _ => return Err(invalid(name, "missing field `graph`".into())),
            },
        };
        let representatives: Option<Vec<Vertex>> = match spec.get("representatives") {
            Some(v) => Some(
                serde_json::from_value(v.clone())
                    .map_err(|e| invalid(name, format!("representatives: {e}")))?,
            ),
            None => None,
        };
        let family = registry().build_named(name, spec, &(group.clone(), graph.clone()))?;
        let action = Self {
            representatives: representatives.or_else(|| family.default_representatives()),
            group,
            graph,
            family,
        };
        if !action.graph.is_finite() {
            action.validate_on_ball().map_err(|e| invalid(name, e.to_string()))?;
        }
        Ok(action)
    }

    pub fn spec(&self) -> Value {
        let mut v = self.family.spec();
        if let Value::Object(m) = &mut v {
            m.insert("group".into(), self.group.spec());
            m.insert("graph".into(), self.graph.spec());
            if let Some(r) = &self.representatives {
                if self.family.default_representatives().as_ref() != Some(r) {
                    m.insert("representatives".into(), serde_json::json!(r));
                }
            }
        }
        v
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn family(&self) -> &dyn ActionFamily {
        self.family.as_ref()
    }

    /// `g·v`.
    pub fn act(&self, g: &GroupElement, v: Vertex) -> Result<Vertex, ActionError> {
        self.group.check(g)?;
        self.graph.check_vertex(v)?;
        Ok(self.family.act(g, v))
    }

    pub(crate) fn act_unchecked(&self, g: &GroupElement, v: Vertex) -> Vertex {
        self.family.act(g, v)
    }

    pub fn act_set(&self, g: &GroupElement, set: &BTreeSet<Vertex>) -> BTreeSet<Vertex> {
        set.iter().map(|&v| self.family.act(g, v)).collect()
    }

    fn validate_on_ball(&self) -> Result<(), ActionError> {
        let ball: Vec<Vertex> = self
            .graph
            .ball(self.graph.base_vertex(), CERTIFICATION_RADIUS, BALL_BUDGET)?
            .into_keys()
            .collect();
        for s in self.group.generators() {
            let s_inv = self.group.inverse(&s)?;
            let mut images = BTreeMap::new();
            for &u in &ball {
                let su = self.family.act(&s, u);
                if !self.graph.contains(su) || self.family.act(&s_inv, su) != u {
                    return Err(ActionError::Invalid(format!(
                        "generator {} is not a bijection at vertex {u}",
                        self.group.format(&s)
                    )));
                }
                if let Some(prev) = images.insert(su, u) {
                    return Err(ActionError::Invalid(format!(
                        "generator {} sends {prev} and {u} to {su}",
                        self.group.format(&s)
                    )));
                }
                // Injective on Lk(u) into Lk(su) with equal degrees: a bijection of links.
                let link = self.graph.neighbors(u)?;
                let moved_link = self.graph.neighbors(su)?;
                for &w in &link {
                    if !moved_link.contains(&self.family.act(&s, w)) {
                        return Err(ActionError::Invalid(format!(
                            "generator {} does not preserve adjacency of ({u}, {w})",
                            self.group.format(&s)
                        )));
                    }
                }
                if link.len() != moved_link.len() {
                    return Err(ActionError::Invalid(format!(
                        "generator {} changes the degree of {u}",
                        self.group.format(&s)
                    )));
                }
            }
        }
        Ok(())
    }

    /// `{g : g·u = w}` when it can be listed exactly: by enumeration for
    /// finite groups, in closed form for free lazy families.
    pub fn transporter(&self, u: Vertex, w: Vertex) -> Option<Vec<GroupElement>> {
        match self.group.elements() {
            Some(all) => Some(all.into_iter().filter(|g| self.family.act(g, u) == w).collect()),
            None => self.family.transporter(u, w),
        }
    }

    /// Vertex orbits. Finite graphs are partitioned exactly; infinite graphs
    /// need representatives, which are certified on a ball.
    pub fn orbits(&self) -> Result<Orbits, ActionError> {
        match self.graph.vertices() {
            Some(vs) => {
                let gens = self.group.generators();
                let mut assigned: BTreeSet<Vertex> = BTreeSet::new();
                let mut classes = Vec::new();
                for &v in vs {
                    if assigned.contains(&v) {
                        continue;
                    }
                    let mut class = BTreeSet::from([v]);
                    let mut queue = VecDeque::from([v]);
                    while let Some(u) = queue.pop_front() {
                        for s in &gens {
                            let su = self.family.act(s, u);
                            if class.insert(su) {
                                queue.push_back(su);
                            }
                        }
                    }
                    assigned.extend(class.iter().copied());
                    classes.push(class);
                }
                Ok(Orbits {
                    representatives: classes.iter().map(|c| *c.first().unwrap()).collect(),
                    classes: Some(classes),
                    certified_radius: None,
                })
            }
            None => self.certified_orbits(),
        }
    }

    fn certified_orbits(&self) -> Result<Orbits, ActionError> {
        let mut reps = self.representatives.clone().ok_or_else(|| {
            ActionError::Inconclusive("orbit representatives are required for infinite graphs".into())
        })?;
        reps.sort_unstable();
        reps.dedup();
        let ball = self
            .graph
            .ball(self.graph.base_vertex(), CERTIFICATION_RADIUS, BALL_BUDGET)?;
        for (i, &r) in reps.iter().enumerate() {
            self.graph.check_vertex(r)?;
            for &r2 in &reps[i + 1..] {
                let t = self.transporter(r, r2).ok_or_else(|| self.no_transporter())?;
                if !t.is_empty() {
                    return Err(ActionError::Invalid(format!(
                        "representatives {r} and {r2} lie in the same orbit"
                    )));
                }
            }
        }
        for &v in ball.keys() {
            self.representative_of(v, &reps)?;
        }
        Ok(Orbits {
            representatives: reps,
            classes: None,
            certified_radius: Some(CERTIFICATION_RADIUS),
        })
    }

    fn no_transporter(&self) -> ActionError {
        ActionError::Inconclusive(format!(
            "the {} action cannot list transporters exactly",
            self.family.kind()
        ))
    }

    fn representative_of(&self, v: Vertex, reps: &[Vertex]) -> Result<Vertex, ActionError> {
        for &r in reps {
            let t = self.transporter(r, v).ok_or_else(|| self.no_transporter())?;
            if !t.is_empty() {
                return Ok(r);
            }
        }
        Err(ActionError::Invalid(format!(
            "vertex {v} is not in the orbit of any representative {reps:?}"
        )))
    }

    /// The orbit representative of `v`.
    pub fn orbit_representative(&self, v: Vertex) -> Result<Vertex, ActionError> {
        self.graph.check_vertex(v)?;
        let orbits = self.orbits()?;
        match &orbits.classes {
            Some(classes) => Ok(*classes
                .iter()
                .find(|c| c.contains(&v))
                .and_then(|c| c.first())
                .expect("orbits partition the vertices")),
            None => self.representative_of(v, &orbits.representatives),
        }
    }

    /// `G^E` and `G₀^E`. Exact when transporters are available; otherwise a
    /// search over the group ball of radius `search_radius`.
    pub fn isotropy(&self, set: &BTreeSet<Vertex>, search_radius: u64) -> Result<Isotropy, ActionError> {
        let Some(&anchor) = set.first() else {
            return Err(ActionError::Invalid("isotropy of the empty set".into()));
        };
        for &v in set {
            self.graph.check_vertex(v)?;
        }
        let mut candidates = Some(BTreeSet::new());
        for &w in set {
            match (self.transporter(anchor, w), candidates.as_mut()) {
                (Some(t), Some(c)) => c.extend(t),
                _ => candidates = None,
            }
        }
        let (pool, exact) = match candidates {
            Some(c) => (c, true),
            None => (self.group.ball(search_radius), false),
        };
        let setwise: BTreeSet<GroupElement> =
            pool.into_iter().filter(|g| self.act_set(g, set) == *set).collect();
        let pointwise: BTreeSet<GroupElement> = setwise
            .iter()
            .filter(|g| set.iter().all(|&v| self.family.act(g, v) == v))
            .cloned()
            .collect();
        let wrap = |s| {
            if exact {
                ElementSet::Exact(s)
            } else {
                ElementSet::BoundedSearch {
                    found: s,
                    radius: search_radius,
                }
            }
        };
        Ok(Isotropy {
            setwise: wrap(setwise),
            pointwise: wrap(pointwise),
        })
    }

    /// Evaluates the action hypotheses. Stabilizers of vertices in one orbit
    /// are conjugate, so orbit representatives suffice.
    pub fn hypothesis_report(&self, search_radius: u64) -> Result<HypothesisReport, ActionError> {
        let orbits = self.orbits()?;
        let e = self.group.identity();
        let mut free = Verdict::Holds;
        let mut finite_isotropy = Verdict::Holds;
        let mut fixes_star = Verdict::Holds;
        for &r in &orbits.representatives {
            let stab = self.isotropy(&BTreeSet::from([r]), search_radius)?.pointwise;
            let star = self.graph.star(r)?;
            let star_fix = self.isotropy(&star, search_radius)?.pointwise;
            let nontrivial = |s: &ElementSet| s.found().iter().find(|g| **g != e).cloned();

            if free.holds() {
                if let Some(g) = nontrivial(&stab) {
                    free = Verdict::Fails((g, r));
                } else if !stab.is_exact() {
                    free = Verdict::Inconclusive(format!(
                        "no nontrivial element fixing {r} within radius {search_radius}"
                    ));
                }
            }
            if finite_isotropy.holds() && !stab.is_exact() {
                finite_isotropy = self.infinite_stabilizer_verdict(r);
            }
            if fixes_star.holds() {
                if let Some(g) = nontrivial(&star_fix) {
                    fixes_star = Verdict::Fails((g, r));
                } else if !star_fix.is_exact() {
                    fixes_star = Verdict::Inconclusive(format!(
                        "no nontrivial element fixing St({r}) within radius {search_radius}"
                    ));
                }
            }
        }
        Ok(HypothesisReport {
            free,
            finite_isotropy,
            orbit_count: orbits.count(),
            fixes_star_implies_trivial: fixes_star,
        })
    }

    /// An infinite group acting on a finite graph has finite-index, hence
    /// infinite, stabilizers. Anything else without transporters is open.
    fn infinite_stabilizer_verdict(&self, v: Vertex) -> Verdict<Vertex> {
        if self.graph.is_finite() && !self.group.is_finite() {
            Verdict::Fails(v)
        } else {
            Verdict::Inconclusive(format!("stabilizer of {v} not enumerable"))
        }
    }

    /// `{g : S ∩ g·S ≠ ∅}` for a finite vertex set `S`, which is finite when
    /// the isotropy groups are.
    pub fn mixing_elements(&self, support: &BTreeSet<Vertex>) -> Result<BTreeSet<GroupElement>, ActionError> {
        let mut out = BTreeSet::new();
        for &u in support {
            for &w in support {
                match self.transporter(u, w) {
                    Some(t) => out.extend(t),
                    None => return Err(self.no_transporter()),
                }
            }
        }
        Ok(out)
    }
}

/// Action families keyed by their `"family"` field; `"permutation"` is the
/// default when the description lists `generator_images`.
pub fn registry() -> &'static Registry<Arc<dyn ActionFamily>, (Group, Graph)> {
    static REGISTRY: OnceLock<Registry<Arc<dyn ActionFamily>, (Group, Graph)>> = OnceLock::new();
    REGISTRY.get_or_init(|| {
        let mut r: Registry<Arc<dyn ActionFamily>, (Group, Graph)> = Registry::new("action", "family");
        r.register("permutation", |value, (group, graph)| {
            let images: Vec<Vec<Vertex>> = match value.get("generator_images") {
                Some(v) => serde_json::from_value(v.clone())
                    .map_err(|e| format!("generator_images: {e}"))?,
                None => return Err("missing field `generator_images`".into()),
            };
            let family = PermutationAction::new(group, graph, images).map_err(|e| e.to_string())?;
            Ok(Arc::new(family) as Arc<dyn ActionFamily>)
        })
        .register("shift", |_, (group, graph)| {
            if group.kind() != "integers" || graph.kind() != "line" {
                return Err("shift needs the integers acting on the line".into());
            }
            Ok(Arc::new(Shift) as Arc<dyn ActionFamily>)
        })
        .register("left_mult", |_, (group, graph)| {
            let rank = group.spec().get("rank").and_then(Value::as_u64);
            let tree_rank = graph.spec().get("rank").and_then(Value::as_u64);
            match (group.kind(), graph.kind()) {
                ("free", "cayley_tree") if rank == tree_rank => {
                    let family = LeftMultiplication::new(rank.unwrap_or(0) as usize)
                        .map_err(|e| e.to_string())?;
                    Ok(Arc::new(family) as Arc<dyn ActionFamily>)
                }
                _ => Err("left_mult needs a free group acting on its own Cayley tree".into()),
            }
        });
        r
    })
}
