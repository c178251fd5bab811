use std::fmt;

use crate::group::{Group, GroupElement};
use crate::product::{GpElement, GraphProduct};

use super::{ActionError, GraphAction};

/// An element `(h, g)` of `H_Γ ⋊ G`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WreathElement {
    pub h: GpElement,
    pub g: GroupElement,
}

/// The graph-wreath product `H_Γ ⋊ G`, where `G` acts on `H_Γ` by moving
/// syllables along its action on `Γ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WreathProduct {
    action: GraphAction,
    product: GraphProduct,
}

impl WreathProduct {
    pub fn new(action: GraphAction, h: Group) -> Self {
        let product = GraphProduct::uniform(action.graph().clone(), h);
        Self { action, product }
    }

    pub fn action(&self) -> &GraphAction {
        &self.action
    }

    pub fn product(&self) -> &GraphProduct {
        &self.product
    }

    pub fn vertex_group(&self) -> &Group {
        self.product.uniform_group().expect("wreath products use one vertex group")
    }

    pub fn acting_group(&self) -> &Group {
        self.action.group()
    }

    pub fn element(&self, h: GpElement, g: GroupElement) -> Result<WreathElement, ActionError> {
        self.product.check(&h)?;
        self.acting_group().check(&g)?;
        Ok(WreathElement { h, g })
    }

    pub fn check(&self, z: &WreathElement) -> Result<(), ActionError> {
        self.product.check(&z.h)?;
        self.acting_group().check(&z.g)?;
        Ok(())
    }

    pub fn identity(&self) -> WreathElement {
        WreathElement {
            h: GpElement::identity(),
            g: self.acting_group().identity(),
        }
    }

    /// `(h, e)`.
    pub fn from_h(&self, h: GpElement) -> WreathElement {
        WreathElement {
            h,
            g: self.acting_group().identity(),
        }
    }

    /// `(e, g)`.
    pub fn from_g(&self, g: GroupElement) -> WreathElement {
        WreathElement {
            h: GpElement::identity(),
            g,
        }
    }

    /// `σ_g(h)`: every syllable `(v, x)` becomes `(g·v, x)`.
    pub fn sigma(&self, g: &GroupElement, h: &GpElement) -> Result<GpElement, ActionError> {
        self.acting_group().check(g)?;
        self.product.check(h)?;
        Ok(self.sigma_unchecked(g, h))
    }

    pub(crate) fn sigma_unchecked(&self, g: &GroupElement, h: &GpElement) -> GpElement {
        self.product.relabel(|v| self.action.act_unchecked(g, v), h)
    }

    /// `(h, g)(h', g') = (h·σ_g(h'), gg')`.
    pub fn multiply(&self, a: &WreathElement, b: &WreathElement) -> Result<WreathElement, ActionError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    pub(crate) fn mul(&self, a: &WreathElement, b: &WreathElement) -> WreathElement {
        let moved = self.sigma_unchecked(&a.g, &b.h);
        WreathElement {
            h: self.product.mul(&a.h, &moved),
            g: self.acting_group().mul(&a.g, &b.g),
        }
    }

    /// `(h, g)⁻¹ = (σ_{g⁻¹}(h⁻¹), g⁻¹)`.
    pub fn invert(&self, z: &WreathElement) -> Result<WreathElement, ActionError> {
        self.check(z)?;
        Ok(self.inv(z))
    }

    pub(crate) fn inv(&self, z: &WreathElement) -> WreathElement {
        let g_inv = self.acting_group().inv(&z.g);
        WreathElement {
            h: self.sigma_unchecked(&g_inv, &self.product.inv(&z.h)),
            g: g_inv,
        }
    }

    /// Parses `"v1:x1 v2:x2 ... ; g"`. Without `;` the group part is `e`.
    pub fn parse(&self, text: &str) -> Result<WreathElement, ActionError> {
        let (h, g) = match text.split_once(';') {
            Some((h, g)) => (h, Some(g.trim())),
            None => (text, None),
        };
        let h = self.product.parse(h)?;
        let g = match g {
            Some(g) if !g.is_empty() && g != "e" => self.acting_group().parse(g)?,
            _ => self.acting_group().identity(),
        };
        Ok(WreathElement { h, g })
    }

    pub fn format(&self, z: &WreathElement) -> String {
        format!("{} ; {}", self.product.format(&z.h), self.acting_group().format(&z.g))
    }
}

impl fmt::Display for WreathElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, s) in self.h.syllables().iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "; {:?})", self.g)
    }
}
