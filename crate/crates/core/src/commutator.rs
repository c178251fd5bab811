//! Matrix elements of the commutators `[f, ρ(h)]` on the group basis.
//!
//! `f` is a finitely supported function on a vertex group `H_v` acting
//! diagonally through the leading `v`-syllable: `f·δ_x = f(x_v) δ_x` where
//! `x_v` is the front-movable `v`-syllable of `x` (or `e`). `ρ(h)` is right
//! multiplication, `δ_x ↦ δ_{x h⁻¹}`. Each basis column of the commutator has
//! a single entry, at `δ_{x h⁻¹}`.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::Rational64;
use num_traits::Zero;
use thiserror::Error;

use crate::action::{ActionError, WreathElement, WreathProduct};
use crate::graph::Vertex;
use crate::group::GroupElement;
use crate::product::{GpElement, GraphProduct, ProductError, Syllable};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CommutatorError {
    #[error(transparent)]
    Product(#[from] ProductError),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error("the multiplier must be a non-identity syllable")]
    DegenerateSyllable,
    #[error("nonzero column at {x} (coefficient {coefficient}) is not covered by any translate")]
    Uncovered { x: String, coefficient: String },
}

/// A finitely supported `f : H_v → ℚ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagSymbol {
    vertex: Vertex,
    values: BTreeMap<GroupElement, Rational64>,
}

impl DiagSymbol {
    /// Zero values are dropped.
    pub fn new(vertex: Vertex, values: impl IntoIterator<Item = (GroupElement, Rational64)>) -> Self {
        Self {
            vertex,
            values: values.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// The indicator of a single element.
    pub fn delta(vertex: Vertex, at: GroupElement) -> Self {
        Self::new(vertex, [(at, Rational64::from_integer(1))])
    }

    pub fn zero(vertex: Vertex) -> Self {
        Self::new(vertex, [])
    }

    pub fn vertex(&self) -> Vertex {
        self.vertex
    }

    pub fn support(&self) -> impl Iterator<Item = &GroupElement> {
        self.values.keys()
    }

    pub fn eval(&self, a: &GroupElement) -> Rational64 {
        self.values.get(a).copied().unwrap_or_else(Rational64::zero)
    }

    fn check(&self, gp: &GraphProduct) -> Result<(), ProductError> {
        let g = gp.vertex_group(self.vertex)?;
        for a in self.values.keys() {
            g.check(a)?;
        }
        Ok(())
    }
}

/// `f(x_v)`, the diagonal entry of `f` at `δ_x`.
pub fn diag_coeff(gp: &GraphProduct, f: &DiagSymbol, x: &GpElement) -> Result<Rational64, CommutatorError> {
    f.check(gp)?;
    gp.check(x)?;
    Ok(f.eval(&gp.leading_syllable(x, f.vertex)?))
}

/// The entry of `[f, ρ(h)]` from `δ_x` to `δ_{x h⁻¹}`, for `h ∈ H_w`:
/// `f((x h⁻¹)_v) − f(x_v)`.
pub fn commutator_coeff(
    gp: &GraphProduct,
    f: &DiagSymbol,
    w: Vertex,
    h: &GroupElement,
    x: &GpElement,
) -> Result<(Rational64, GpElement), CommutatorError> {
    f.check(gp)?;
    gp.check(x)?;
    let group = gp.vertex_group(w)?;
    group.check(h).map_err(ProductError::from)?;
    if group.is_identity(h) {
        return Err(CommutatorError::DegenerateSyllable);
    }
    let h_inv = gp.syllable(w, group.inverse(h).map_err(ProductError::from)?)?;
    let target = gp.mul(x, &h_inv);
    let c = f.eval(&gp.leading_syllable(&target, f.vertex)?) - f.eval(&gp.leading_syllable(x, f.vertex)?);
    Ok((c, target))
}

/// The entry of `[f, ρ(h)] ⊗ 1` on the wreath basis from `δ_z` to
/// `δ_{z (h, e)⁻¹}`, for `z = (x, g)`: the plain coefficient of `σ_g(h)`,
/// which sits at vertex `g·w`.
pub fn crossed_commutator_coeff(
    wreath: &WreathProduct,
    f: &DiagSymbol,
    w: Vertex,
    h: &GroupElement,
    z: &WreathElement,
) -> Result<(Rational64, WreathElement), CommutatorError> {
    wreath.check(z)?;
    let gw = wreath.action().act(&z.g, w)?;
    let (c, x) = commutator_coeff(wreath.product(), f, gw, h, &z.h)?;
    Ok((c, WreathElement { h: x, g: z.g.clone() }))
}

/// Left translates `a·H_{Lk v}` of the link subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslateCover {
    pub vertex: Vertex,
    pub translates: Vec<GpElement>,
}

impl TranslateCover {
    /// The index of a translate containing `x`: `a⁻¹x` is supported in `Lk(v)`.
    pub fn covering(&self, gp: &GraphProduct, x: &GpElement) -> Result<Option<usize>, CommutatorError> {
        let link = gp.graph().neighbors(self.vertex).map_err(ProductError::from)?;
        Ok(self
            .translates
            .iter()
            .position(|a| gp.mul(&gp.inv(a), x).support().is_subset(&link)))
    }
}

/// A cover together with the sweep that verified it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverCertificate {
    pub cover: TranslateCover,
    pub radius: usize,
    pub swept: usize,
    pub nonzero: usize,
}

/// Builds the cover `{a·H_{Lk v} : a ∈ supp f ∪ (supp f)·h}` (empty when
/// `v ≠ w`) and checks that every `x` of syllable length at most `radius`
/// with a nonzero column lies in it.
pub fn smallness_witness(
    gp: &GraphProduct,
    f: &DiagSymbol,
    w: Vertex,
    h: &GroupElement,
    radius: usize,
    elem_radius: u64,
) -> Result<CoverCertificate, CommutatorError> {
    f.check(gp)?;
    let v = f.vertex;
    let mut heads: BTreeSet<GroupElement> = BTreeSet::new();
    if v == w {
        let group = gp.vertex_group(v)?;
        for a in f.support() {
            heads.insert(a.clone());
            heads.insert(group.product(a, h).map_err(ProductError::from)?);
        }
    }
    let translates = heads
        .into_iter()
        .map(|a| gp.normalize(&[Syllable::new(v, a)]))
        .collect::<Result<Vec<_>, _>>()?;
    let cover = TranslateCover { vertex: v, translates };
    let ball = gp.syllable_ball(radius, elem_radius)?;
    let mut nonzero = 0;
    for x in &ball {
        let (c, _) = commutator_coeff(gp, f, w, h, x)?;
        if c.is_zero() {
            continue;
        }
        nonzero += 1;
        if cover.covering(gp, x)?.is_none() {
            return Err(CommutatorError::Uncovered {
                x: gp.format(x),
                coefficient: c.to_string(),
            });
        }
    }
    Ok(CoverCertificate {
        cover,
        radius,
        swept: ball.len(),
        nonzero,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::group::Group;

    fn z3_path() -> GraphProduct {
        GraphProduct::uniform(Graph::path(4).unwrap(), Group::cyclic(3).unwrap())
    }

    fn r(n: i64) -> Rational64 {
        Rational64::from_integer(n)
    }

    #[test]
    fn diagonal_entries() {
        let gp = z3_path();
        let f = DiagSymbol::new(0, [(GroupElement::Residue(0), r(7)), (GroupElement::Residue(2), r(3))]);
        assert_eq!(diag_coeff(&gp, &f, &GpElement::identity()).unwrap(), r(7));
        let far = gp.parse("2:1").unwrap();
        assert_eq!(diag_coeff(&gp, &f, &far).unwrap(), r(7));
        let front = gp.parse("0:2 2:1").unwrap();
        assert_eq!(diag_coeff(&gp, &f, &front).unwrap(), r(3));
    }

    #[test]
    fn commutator_at_identity() {
        let gp = z3_path();
        let h = GroupElement::Residue(1);
        let f = DiagSymbol::delta(0, GroupElement::Residue(2));
        let (c, target) = commutator_coeff(&gp, &f, 0, &h, &GpElement::identity()).unwrap();
        assert_eq!(c, r(1));
        assert_eq!(gp.format(&target), "0:2");
        assert_eq!(
            commutator_coeff(&gp, &f, 0, &GroupElement::Residue(0), &GpElement::identity()),
            Err(CommutatorError::DegenerateSyllable)
        );
    }

    #[test]
    fn distinct_vertices_give_zero() {
        let gp = z3_path();
        let f = DiagSymbol::delta(0, GroupElement::Residue(1));
        let x = gp.parse("3:1").unwrap();
        let (c, _) = commutator_coeff(&gp, &f, 2, &GroupElement::Residue(1), &x).unwrap();
        assert!(c.is_zero());
    }

    #[test]
    fn star_cover_has_two_translates() {
        let star = Graph::from_edges([], [(0, 1), (0, 2), (0, 3)]).unwrap();
        let gp = GraphProduct::uniform(star, Group::cyclic(2).unwrap());
        let one = GroupElement::Residue(1);
        let f = DiagSymbol::delta(0, one.clone());
        let cert = smallness_witness(&gp, &f, 0, &one, 4, 0).unwrap();
        assert_eq!(cert.cover.translates.len(), 2);
        assert!(cert.nonzero > 0);
    }

    #[test]
    fn trivial_covers() {
        let gp = z3_path();
        let h = GroupElement::Residue(1);
        let zero = smallness_witness(&gp, &DiagSymbol::zero(1), 1, &h, 3, 0).unwrap();
        assert!(zero.cover.translates.is_empty());
        assert_eq!(zero.nonzero, 0);
        let apart = smallness_witness(&gp, &DiagSymbol::delta(1, h.clone()), 3, &h, 3, 0).unwrap();
        assert!(apart.cover.translates.is_empty());
    }
}
