//! Length functions on a graph-wreath product and the m-map.
//!
//! `|g|_G` and `|h|_H` are generator word lengths. `|v|_Γ` is the least
//! `|g|_G` with `g·r = v` for an orbit representative `r`, i.e. the
//! multi-source BFS distance in the Schreier graph of the action.

use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::RwLock;

use thiserror::Error;

use crate::action::{ActionError, WreathElement, WreathProduct};
use crate::graph::Vertex;
use crate::group::GroupElement;
use crate::product::GpElement;
use crate::verdict::Verdict;

/// Default cap on the number of vertices the Schreier BFS may visit.
pub const DEFAULT_BUDGET: usize = 1 << 20;
const HYPOTHESIS_SEARCH_RADIUS: u64 = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LengthError {
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error("length functions need {0}")]
    Hypothesis(String),
    #[error("Schreier BFS visited {0} vertices without reaching the target")]
    Budget(usize),
}

/// A finitely supported vector in `ℓ¹(VΓ)` with nonnegative integer entries.
/// Zero entries are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SparseVertexVector {
    entries: BTreeMap<Vertex, u64>,
}

impl SparseVertexVector {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `c·δ_v`.
    pub fn add(&mut self, v: Vertex, c: u64) {
        if c > 0 {
            *self.entries.entry(v).or_insert(0) += c;
        }
    }

    pub fn get(&self, v: Vertex) -> u64 {
        self.entries.get(&v).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> &BTreeMap<Vertex, u64> {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn l1(&self) -> u64 {
        self.entries.values().sum()
    }

    /// `‖self − other‖₁`.
    pub fn l1_distance(&self, other: &Self) -> u64 {
        let keys: BTreeSet<Vertex> = self.entries.keys().chain(other.entries.keys()).copied().collect();
        keys.into_iter().map(|v| self.get(v).abs_diff(other.get(v))).sum()
    }

    /// The image vector `Σ c_v δ_{φ(v)}`. Colliding entries are summed.
    pub fn pushforward(&self, phi: impl Fn(Vertex) -> Vertex) -> Self {
        let mut out = Self::new();
        for (&v, &c) in &self.entries {
            out.add(phi(v), c);
        }
        out
    }
}

impl FromIterator<(Vertex, u64)> for SparseVertexVector {
    fn from_iter<I: IntoIterator<Item = (Vertex, u64)>>(iter: I) -> Self {
        let mut out = Self::new();
        for (v, c) in iter {
            out.add(v, c);
        }
        out
    }
}

#[derive(Debug, Default)]
struct SchreierBfs {
    dist: HashMap<Vertex, u64>,
    frontier: Vec<Vertex>,
    radius: u64,
    exhausted: bool,
}

/// `|·|_G`, `|·|_H` and `|·|_Γ` for one wreath product.
#[derive(Debug)]
pub struct LengthSystem {
    wreath: WreathProduct,
    representatives: Vec<Vertex>,
    generators: Vec<GroupElement>,
    bfs: RwLock<SchreierBfs>,
    budget: usize,
    /// Infinite group whose family lists transporters exactly.
    closed_form: bool,
}

/// Outcome of [`LengthSystem::verify_properties`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyReport {
    pub subadditive_g: Verdict<String>,
    pub subadditive_h: Verdict<String>,
    pub vertex_bound: Verdict<String>,
    /// Sizes of `{|g|_G ≤ r}`, `{|h|_H ≤ r}` and `{|v|_Γ ≤ r}` for each checked `r`.
    pub sublevel_sizes: Vec<(u64, usize, usize, usize)>,
    pub exhaustive: bool,
}

impl PropertyReport {
    pub fn holds(&self) -> bool {
        self.subadditive_g.holds() && self.subadditive_h.holds() && self.vertex_bound.holds()
    }

    pub fn first_failure(&self) -> Option<&String> {
        self.subadditive_g
            .witness()
            .or(self.subadditive_h.witness())
            .or(self.vertex_bound.witness())
    }
}

impl LengthSystem {
    /// Requires finite isotropy and finitely many orbits.
    pub fn new(wreath: WreathProduct) -> Result<Self, LengthError> {
        Self::with_budget(wreath, DEFAULT_BUDGET)
    }

    pub fn with_budget(wreath: WreathProduct, budget: usize) -> Result<Self, LengthError> {
        let action = wreath.action();
        let report = action.hypothesis_report(HYPOTHESIS_SEARCH_RADIUS)?;
        match report.finite_isotropy {
            Verdict::Holds => {}
            Verdict::Fails(v) => {
                return Err(LengthError::Hypothesis(format!(
                    "finite isotropy, but the stabilizer of {v} is infinite"
                )))
            }
            Verdict::Inconclusive(why) => {
                return Err(LengthError::Hypothesis(format!("certified finite isotropy ({why})")))
            }
        }
        let representatives = action.orbits()?.representatives;
        let generators = action.group().generators();
        let closed_form = !action.group().is_finite()
            && representatives
                .first()
                .is_some_and(|&r| action.family().transporter(r, r).is_some());
        let bfs = SchreierBfs {
            dist: representatives.iter().map(|&r| (r, 0)).collect(),
            frontier: representatives.clone(),
            radius: 0,
            exhausted: false,
        };
        Ok(Self {
            wreath,
            representatives,
            generators,
            bfs: RwLock::new(bfs),
            budget,
            closed_form,
        })
    }

    pub fn wreath(&self) -> &WreathProduct {
        &self.wreath
    }

    pub fn representatives(&self) -> &[Vertex] {
        &self.representatives
    }

    pub fn group_length(&self, g: &GroupElement) -> u64 {
        self.wreath.acting_group().len_of(g)
    }

    pub fn h_length(&self, x: &GroupElement) -> u64 {
        self.wreath.vertex_group().len_of(x)
    }

    /// `|v|_Γ`.
    pub fn vertex_length(&self, v: Vertex) -> Result<u64, LengthError> {
        let action = self.wreath.action();
        action.graph().check_vertex(v).map_err(ActionError::from)?;
        if let Some(&d) = self.bfs.read().expect("bfs lock").dist.get(&v) {
            return Ok(d);
        }
        if self.closed_form {
            return self.vertex_length_by_transporters(v);
        }
        let mut bfs = self.bfs.write().expect("bfs lock");
        loop {
            if let Some(&d) = bfs.dist.get(&v) {
                return Ok(d);
            }
            if bfs.exhausted {
                return Err(LengthError::Action(ActionError::Invalid(format!(
                    "vertex {v} is in no orbit of a representative"
                ))));
            }
            self.grow(&mut bfs)?;
        }
    }

    /// Minimizes `|g|_G` over the exact transporters `{g : g·r = v}`, which
    /// agrees with the BFS distance without exploring the ball.
    fn vertex_length_by_transporters(&self, v: Vertex) -> Result<u64, LengthError> {
        let action = self.wreath.action();
        let mut best: Option<u64> = None;
        for &r in &self.representatives {
            let t = action.family().transporter(r, v).expect("closed-form transporters");
            if let Some(len) = t.iter().map(|g| self.group_length(g)).min() {
                best = Some(best.map_or(len, |b| b.min(len)));
            }
        }
        best.ok_or_else(|| {
            LengthError::Action(ActionError::Invalid(format!(
                "vertex {v} is in no orbit of a representative"
            )))
        })
    }

    fn grow(&self, bfs: &mut SchreierBfs) -> Result<(), LengthError> {
        let action = self.wreath.action();
        let next_radius = bfs.radius + 1;
        let mut next = Vec::new();
        for u in std::mem::take(&mut bfs.frontier) {
            for s in &self.generators {
                let su = action.act_unchecked(s, u);
                if let Entry::Vacant(e) = bfs.dist.entry(su) {
                    e.insert(next_radius);
                    next.push(su);
                }
            }
        }
        if bfs.dist.len() > self.budget {
            return Err(LengthError::Budget(self.budget));
        }
        bfs.exhausted = next.is_empty();
        bfs.frontier = next;
        bfs.radius = next_radius;
        Ok(())
    }

    /// `B(Γ, R) = {v : |v|_Γ ≤ R}`.
    pub fn graph_ball(&self, radius: u64) -> Result<BTreeSet<Vertex>, LengthError> {
        let mut bfs = self.bfs.write().expect("bfs lock");
        while bfs.radius < radius && !bfs.exhausted {
            self.grow(&mut bfs)?;
        }
        Ok(bfs
            .dist
            .iter()
            .filter(|(_, &d)| d <= radius)
            .map(|(&v, _)| v)
            .collect())
    }

    /// `m(z) = Σ_{v ∈ supp h} min{|v|_Γ, |g⁻¹v|_Γ} δ_v + Σ_i |h_i|_H δ_{v_i}`.
    pub fn m_map(&self, z: &WreathElement) -> Result<SparseVertexVector, LengthError> {
        self.wreath.check(z)?;
        let action = self.wreath.action();
        let g_inv = action.group().inv(&z.g);
        let mut m = SparseVertexVector::new();
        for v in z.h.support() {
            let a = self.vertex_length(v)?;
            let b = self.vertex_length(action.act_unchecked(&g_inv, v))?;
            m.add(v, a.min(b));
        }
        for s in z.h.syllables() {
            m.add(s.vertex, self.h_length(&s.elem));
        }
        Ok(m)
    }

    /// `|z|_f = ‖m(z)‖₁`.
    pub fn f_length(&self, z: &WreathElement) -> Result<u64, LengthError> {
        Ok(self.m_map(z)?.l1())
    }

    /// Whether `z = (h₁⋯h_m, g)` lies in `A(E, F, n)`: `m ≤ n`, every
    /// `h_i ∈ E` and every syllable vertex in `F ∪ gF`.
    pub fn in_a(
        &self,
        e: &BTreeSet<GroupElement>,
        f: &BTreeSet<Vertex>,
        n: usize,
        z: &WreathElement,
    ) -> Result<bool, LengthError> {
        self.wreath.check(z)?;
        Ok(in_a(&self.wreath, e, f, n, z))
    }

    /// The three length properties. Finite groups and graphs are checked
    /// exhaustively; otherwise on the balls of the given radius.
    pub fn verify_properties(&self, radius: u64) -> Result<PropertyReport, LengthError> {
        let g_group = self.wreath.acting_group();
        let h_group = self.wreath.vertex_group();
        let action = self.wreath.action();
        let exhaustive = g_group.is_finite() && h_group.is_finite() && action.graph().is_finite();
        let g_ball: Vec<GroupElement> = match g_group.elements() {
            Some(all) => all,
            None => g_group.ball(radius).into_iter().collect(),
        };
        let h_ball: Vec<GroupElement> = match h_group.elements() {
            Some(all) => all,
            None => h_group.ball(radius).into_iter().collect(),
        };
        let subadditive = |group: &crate::group::Group, ball: &[GroupElement], name: &str| {
            for a in ball {
                for b in ball {
                    let (la, lb, lab) = (group.len_of(a), group.len_of(b), group.len_of(&group.mul(a, b)));
                    if lab > la + lb {
                        return Verdict::Fails(format!(
                            "|{}·{}|_{name} = {lab} > {la} + {lb}",
                            group.format(a),
                            group.format(b)
                        ));
                    }
                }
            }
            Verdict::Holds
        };
        let subadditive_g = subadditive(g_group, &g_ball, "G");
        let subadditive_h = subadditive(h_group, &h_ball, "H");

        let vertices: Vec<Vertex> = match action.graph().vertices() {
            Some(vs) => vs.to_vec(),
            None => self.graph_ball(radius)?.into_iter().collect(),
        };
        let mut vertex_bound = Verdict::Holds;
        'outer: for g in &g_ball {
            let lg = g_group.len_of(g);
            for &v in &vertices {
                let gv = action.act_unchecked(g, v);
                let (lgv, lv) = (self.vertex_length(gv)?, self.vertex_length(v)?);
                if lgv > lg + lv {
                    vertex_bound = Verdict::Fails(format!(
                        "|{}·{v}|_Γ = {lgv} > {lg} + {lv}",
                        g_group.format(g)
                    ));
                    break 'outer;
                }
            }
        }

        let mut sublevel_sizes = Vec::new();
        for r in 0..=radius {
            let count = |ball: &[GroupElement], len: &dyn Fn(&GroupElement) -> u64| {
                ball.iter().filter(|x| len(x) <= r).count()
            };
            sublevel_sizes.push((
                r,
                count(&g_ball, &|x| g_group.len_of(x)),
                count(&h_ball, &|x| h_group.len_of(x)),
                self.graph_ball(r)?.len(),
            ));
        }
        Ok(PropertyReport {
            subadditive_g,
            subadditive_h,
            vertex_bound,
            sublevel_sizes,
            exhaustive,
        })
    }

    /// `|x|_f` of the one-syllable element `((v, x), e)`.
    pub fn syllable_f_length(&self, v: Vertex, x: &GroupElement) -> Result<u64, LengthError> {
        let h = self.wreath.product().syllable(v, x.clone()).map_err(ActionError::from)?;
        self.f_length(&self.wreath.from_h(h))
    }

    /// `|supp h|` of the `H_Γ`-part.
    pub fn support_size(z: &WreathElement) -> usize {
        z.h.support().len()
    }
}

/// Membership in `A(E, F, n)` without context checks.
pub fn in_a(
    wreath: &WreathProduct,
    e: &BTreeSet<GroupElement>,
    f: &BTreeSet<Vertex>,
    n: usize,
    z: &WreathElement,
) -> bool {
    let action = wreath.action();
    let h: &GpElement = &z.h;
    h.syllable_length() <= n
        && h.syllables().iter().all(|s| {
            e.contains(&s.elem)
                && (f.contains(&s.vertex) || f.iter().any(|&u| action.act_unchecked(&z.g, u) == s.vertex))
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::GraphAction;
    use crate::group::Group;

    fn line_system() -> LengthSystem {
        LengthSystem::new(WreathProduct::new(GraphAction::shift(), Group::integers())).unwrap()
    }

    fn rotation_system(trivial: bool) -> LengthSystem {
        let action = if trivial {
            GraphAction::trivial(crate::graph::Graph::cycle(5).unwrap()).unwrap()
        } else {
            GraphAction::rotation(5, 5, 1).unwrap()
        };
        LengthSystem::new(WreathProduct::new(action, Group::cyclic(3).unwrap())).unwrap()
    }

    #[test]
    fn line_lengths_are_absolute_values() {
        let l = line_system();
        for v in -7..=7 {
            assert_eq!(l.vertex_length(v).unwrap(), v.unsigned_abs());
        }
        assert_eq!(l.graph_ball(2).unwrap(), (-2..=2).collect());
        assert_eq!(l.graph_ball(0).unwrap(), BTreeSet::from([0]));
    }

    #[test]
    fn transporter_lengths_match_schreier_bfs() {
        let action = GraphAction::left_multiplication(2).unwrap();
        let l = LengthSystem::new(WreathProduct::new(action, Group::cyclic(2).unwrap())).unwrap();
        assert!(l.closed_form);
        let ball = l.graph_ball(4).unwrap();
        assert_eq!(ball.len(), 1 + 4 + 12 + 36 + 108);
        let bfs = l.bfs.read().unwrap();
        for v in ball {
            assert_eq!(l.vertex_length_by_transporters(v).unwrap(), bfs.dist[&v]);
        }
    }

    #[test]
    fn rotation_lengths() {
        let l = rotation_system(false);
        let got: Vec<u64> = (0..5).map(|v| l.vertex_length(v).unwrap()).collect();
        assert_eq!(got, vec![0, 1, 2, 2, 1]);
        assert_eq!(l.graph_ball(1).unwrap(), BTreeSet::from([0, 1, 4]));
        let t = rotation_system(true);
        assert!((0..5).all(|v| t.vertex_length(v).unwrap() == 0));
    }

    #[test]
    fn m_map_single_syllable_on_line() {
        let l = line_system();
        let w = l.wreath();
        let z = w.parse("3:2 ; 5").unwrap();
        let m = l.m_map(&z).unwrap();
        assert_eq!(m.entries(), &BTreeMap::from([(3, 4)]));
        assert_eq!(l.f_length(&z).unwrap(), 4);
        assert!(l.m_map(&w.identity()).unwrap().is_zero());
    }

    #[test]
    fn in_a_basic_cases() {
        let l = line_system();
        let w = l.wreath();
        let empty = BTreeSet::new();
        assert!(l.in_a(&empty, &BTreeSet::new(), 0, &w.identity()).unwrap());
        let z = w.parse("7:1 ; 1").unwrap();
        let e = BTreeSet::from([GroupElement::Int(1)]);
        assert!(!l.in_a(&e, &BTreeSet::from([0]), 3, &z).unwrap());
        assert!(l.in_a(&e, &BTreeSet::from([6]), 3, &z).unwrap());
        assert!(!l.in_a(&e, &BTreeSet::from([7]), 0, &z).unwrap());
    }

    #[test]
    fn infinite_stabilizers_are_rejected() {
        let c4 = crate::graph::Graph::cycle(4).unwrap();
        let action = GraphAction::permutation(Group::integers(), c4, vec![vec![1, 2, 3, 0]]).unwrap();
        let err = LengthSystem::new(WreathProduct::new(action, Group::integers())).unwrap_err();
        assert!(matches!(err, LengthError::Hypothesis(_)), "{err}");
    }

    #[test]
    fn sparse_vector_arithmetic() {
        let a: SparseVertexVector = [(1, 2), (3, 0), (4, 5)].into_iter().collect();
        let b: SparseVertexVector = [(1, 1), (2, 2)].into_iter().collect();
        assert_eq!(a.entries().len(), 2);
        assert_eq!(a.l1(), 7);
        assert_eq!(a.l1_distance(&b), 1 + 2 + 5);
        assert_eq!(a.pushforward(|v| v + 1).get(5), 5);
    }
}
