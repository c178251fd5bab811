//! Exact group arithmetic.
//!
//! A [`Group`] is a shared handle to a [`GroupBackend`]. Backends are
//! interchangeable and registered by name in [`registry()`]; elements of all
//! backends share the single value type [`GroupElement`], and membership is
//! checked by the backend so that mixing handles is reported as a domain
//! mismatch rather than producing garbage.

mod cyclic;
mod finite;
pub mod free;
mod integers;
mod perm;
mod table;

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde_json::Value;
use thiserror::Error;

use crate::registry::{Registry, SpecError};

pub use cyclic::Cyclic;
pub use free::FreeGroup;
pub use integers::Integers;
pub use perm::PermGroup;

pub(crate) use perm::{invert as perm_inverse, is_permutation};

pub(crate) fn perm_is_bijection(p: &[usize]) -> bool {
    is_permutation(p, p.len())
}
pub use table::TableGroup;

/// An exact group element. Which variant is valid depends on the backend.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroupElement {
    Int(i64),
    Residue(u64),
    /// Reduced free word; letter `2i` is the i-th generator, `2i + 1` its inverse.
    Word(Vec<u8>),
    /// Row index of a multiplication table.
    Index(usize),
    /// One-line notation of a permutation of `0..degree`.
    Perm(Vec<usize>),
}

/// One letter of a word in the listed generators of a group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenLetter {
    pub index: usize,
    pub inverse: bool,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("element {element} does not belong to the {group} group")]
    DomainMismatch { group: String, element: String },
    #[error("invalid group description: {0}")]
    Invalid(String),
    #[error("cannot parse {literal:?} as an element of the {group} group: {reason}")]
    Parse {
        group: String,
        literal: String,
        reason: String,
    },
    #[error("group enumeration exceeded budget of {0} elements")]
    Budget(usize),
}

/// One exact group implementation.
///
/// Methods other than `contains` and `parse_element` may assume their
/// arguments belong to the group; [`Group`] checks membership before calling.
pub trait GroupBackend: fmt::Debug + Send + Sync {
    fn kind(&self) -> &'static str;

    /// JSON description that rebuilds this group through [`registry()`].
    fn spec(&self) -> Value;

    fn contains(&self, a: &GroupElement) -> bool;

    fn identity(&self) -> GroupElement;

    fn product(&self, a: &GroupElement, b: &GroupElement) -> GroupElement;

    fn inverse(&self, a: &GroupElement) -> GroupElement;

    /// Generators as listed in the description. Actions assign a vertex map to
    /// each of these, in this order.
    fn primary_generators(&self) -> Vec<GroupElement>;

    /// Writes `a` as a word in the primary generators and their inverses.
    fn primary_word(&self, a: &GroupElement) -> Vec<GenLetter>;

    /// Length of a shortest word for `a` over the symmetrized generators.
    fn word_length(&self, a: &GroupElement) -> u64;

    fn order(&self) -> Option<usize>;

    /// All elements, for finite groups.
    fn elements(&self) -> Option<Vec<GroupElement>> {
        None
    }

    fn parse_element(&self, literal: &str) -> Result<GroupElement, String>;

    fn format_element(&self, a: &GroupElement) -> String;
}

/// Shared handle to a group backend.
#[derive(Clone)]
pub struct Group {
    backend: Arc<dyn GroupBackend>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group({})", self.backend.spec())
    }
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.backend, &other.backend) || self.backend.spec() == other.backend.spec()
    }
}

impl Eq for Group {}

impl Group {
    pub fn new(backend: impl GroupBackend + 'static) -> Self {
        Self {
            backend: Arc::new(backend),
        }
    }

    pub fn integers() -> Self {
        Self::new(Integers)
    }

    pub fn cyclic(n: u64) -> Result<Self, GroupError> {
        Ok(Self::new(Cyclic::new(n)?))
    }

    pub fn free(rank: usize) -> Result<Self, GroupError> {
        Ok(Self::new(FreeGroup::new(rank)?))
    }

    pub fn table(mul: Vec<Vec<usize>>, gens: Option<Vec<usize>>) -> Result<Self, GroupError> {
        Ok(Self::new(TableGroup::new(mul, gens)?))
    }

    pub fn perm(degree: usize, gens: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        Ok(Self::new(PermGroup::new(degree, gens)?))
    }

    /// Builds a group from its JSON description.
    pub fn from_spec(spec: &Value) -> Result<Self, SpecError> {
        registry().build(spec, &())
    }

    pub fn backend(&self) -> &dyn GroupBackend {
        self.backend.as_ref()
    }

    pub fn kind(&self) -> &'static str {
        self.backend.kind()
    }

    pub fn spec(&self) -> Value {
        self.backend.spec()
    }

    pub fn contains(&self, a: &GroupElement) -> bool {
        self.backend.contains(a)
    }

    pub fn check(&self, a: &GroupElement) -> Result<(), GroupError> {
        if self.backend.contains(a) {
            Ok(())
        } else {
            Err(GroupError::DomainMismatch {
                group: self.backend.kind().to_string(),
                element: format!("{a:?}"),
            })
        }
    }

    pub fn identity(&self) -> GroupElement {
        self.backend.identity()
    }

    pub fn is_identity(&self, a: &GroupElement) -> bool {
        *a == self.backend.identity()
    }

    pub fn product(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.backend.product(a, b))
    }

    pub fn inverse(&self, a: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(a)?;
        Ok(self.backend.inverse(a))
    }

    pub fn equal(&self, a: &GroupElement, b: &GroupElement) -> Result<bool, GroupError> {
        self.check(a)?;
        self.check(b)?;
        Ok(a == b)
    }

    /// Unchecked product for callers that already validated their operands.
    pub(crate) fn mul(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.backend.product(a, b)
    }

    pub(crate) fn inv(&self, a: &GroupElement) -> GroupElement {
        self.backend.inverse(a)
    }

    pub fn word_length(&self, a: &GroupElement) -> Result<u64, GroupError> {
        self.check(a)?;
        Ok(self.backend.word_length(a))
    }

    pub(crate) fn len_of(&self, a: &GroupElement) -> u64 {
        self.backend.word_length(a)
    }

    pub fn primary_generators(&self) -> Vec<GroupElement> {
        self.backend.primary_generators()
    }

    /// The symmetrized generating set: primary generators and their inverses,
    /// without the identity and without repeats, in a fixed order.
    pub fn generators(&self) -> Vec<GroupElement> {
        let e = self.identity();
        let mut out = Vec::new();
        for g in self.backend.primary_generators() {
            for x in [self.backend.inverse(&g), g] {
                if x != e && !out.contains(&x) {
                    out.push(x);
                }
            }
        }
        out
    }

    pub fn primary_word(&self, a: &GroupElement) -> Result<Vec<GenLetter>, GroupError> {
        self.check(a)?;
        Ok(self.backend.primary_word(a))
    }

    pub fn order(&self) -> Option<usize> {
        self.backend.order()
    }

    pub fn is_finite(&self) -> bool {
        self.backend.order().is_some()
    }

    pub fn elements(&self) -> Option<Vec<GroupElement>> {
        self.backend.elements()
    }

    /// `{g : |g| <= r}`, by breadth-first search over the generators.
    pub fn ball(&self, r: u64) -> BTreeSet<GroupElement> {
        let gens = self.generators();
        let e = self.identity();
        let mut seen = BTreeSet::from([e.clone()]);
        let mut frontier = VecDeque::from([(e, 0u64)]);
        while let Some((x, d)) = frontier.pop_front() {
            if d == r {
                continue;
            }
            for s in &gens {
                let y = self.backend.product(&x, s);
                if seen.insert(y.clone()) {
                    frontier.push_back((y, d + 1));
                }
            }
        }
        seen
    }

    pub fn parse(&self, literal: &str) -> Result<GroupElement, GroupError> {
        let a = self
            .backend
            .parse_element(literal.trim())
            .map_err(|reason| GroupError::Parse {
                group: self.kind().to_string(),
                literal: literal.to_string(),
                reason,
            })?;
        self.check(&a)?;
        Ok(a)
    }

    pub fn format(&self, a: &GroupElement) -> String {
        self.backend.format_element(a)
    }
}

/// The standard group backends, keyed by their `"type"` field.
pub fn registry() -> &'static Registry<Group> {
    static REGISTRY: OnceLock<Registry<Group>> = OnceLock::new();
    REGISTRY.get_or_init(|| {
        #[derive(serde::Deserialize)]
        #[serde(deny_unknown_fields)]
        struct CyclicSpec {
            #[allow(dead_code)]
            r#type: String,
            n: u64,
        }
        #[derive(serde::Deserialize)]
        #[serde(deny_unknown_fields)]
        struct FreeSpec {
            #[allow(dead_code)]
            r#type: String,
            rank: usize,
        }
        #[derive(serde::Deserialize)]
        #[serde(deny_unknown_fields)]
        struct TableSpec {
            #[allow(dead_code)]
            r#type: String,
            mul: Vec<Vec<usize>>,
            #[serde(default)]
            gens: Option<Vec<usize>>,
        }
        #[derive(serde::Deserialize)]
        #[serde(deny_unknown_fields)]
        struct PermSpec {
            #[allow(dead_code)]
            r#type: String,
            degree: usize,
            gens: Vec<Vec<usize>>,
        }

        let mut r = Registry::new("group", "type");
        r.register("integers", |_, _| Ok(Group::integers()))
            .register_typed("cyclic", |p: CyclicSpec, _| {
                Group::cyclic(p.n).map_err(|e| e.to_string())
            })
            .register_typed("free", |p: FreeSpec, _| {
                Group::free(p.rank).map_err(|e| e.to_string())
            })
            .register_typed("table", |p: TableSpec, _| {
                Group::table(p.mul, p.gens).map_err(|e| e.to_string())
            })
            .register_typed("perm", |p: PermSpec, _| {
                Group::perm(p.degree, p.gens).map_err(|e| e.to_string())
            });
        r
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn registry_builds_every_backend() {
        for spec in [
            json!({"type": "integers"}),
            json!({"type": "cyclic", "n": 4}),
            json!({"type": "free", "rank": 2}),
            json!({"type": "table", "mul": [[0, 1], [1, 0]]}),
            json!({"type": "perm", "degree": 3, "gens": [[1, 0, 2], [0, 2, 1]]}),
        ] {
            let g = Group::from_spec(&spec).unwrap();
            assert_eq!(g.spec(), spec);
        }
    }

    #[test]
    fn malformed_spec_names_the_field() {
        let err = Group::from_spec(&json!({"type": "cyclic"})).unwrap_err();
        assert!(err.to_string().contains("`n`"), "{err}");
        let err = Group::from_spec(&json!({"type": "klein"})).unwrap_err();
        assert!(err.to_string().contains("klein"));
    }

    #[test]
    fn cross_handle_operands_are_rejected() {
        let z = Group::integers();
        let err = z.product(&GroupElement::Int(1), &GroupElement::Residue(1)).unwrap_err();
        assert!(matches!(err, GroupError::DomainMismatch { .. }));
        let c4 = Group::cyclic(4).unwrap();
        assert!(c4.inverse(&GroupElement::Residue(4)).is_err());
    }

    #[test]
    fn balls() {
        let z = Group::integers();
        let b: Vec<_> = z.ball(2).into_iter().collect();
        assert_eq!(b, (-2..=2).map(GroupElement::Int).collect::<Vec<_>>());
        let f2 = Group::free(2).unwrap();
        assert_eq!(f2.ball(1).len(), 5);
        assert_eq!(f2.ball(2).len(), 17);
    }

    #[test]
    fn ball_sizes_are_monotone_and_saturate() {
        let s3 = Group::perm(3, vec![vec![1, 0, 2], vec![0, 2, 1]]).unwrap();
        let sizes: Vec<_> = (0..6).map(|r| s3.ball(r).len()).collect();
        assert!(sizes.windows(2).all(|w| w[0] <= w[1]));
        assert_eq!(*sizes.last().unwrap(), 6);
    }
}
