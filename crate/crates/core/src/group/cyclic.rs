use serde_json::{json, Value};

use super::{GenLetter, GroupBackend, GroupElement, GroupError};

/// `Z/n` with generators `±1`. Residues are kept in `[0, n)`.
#[derive(Debug, Clone, Copy)]
pub struct Cyclic {
    n: u64,
}

impl Cyclic {
    pub fn new(n: u64) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::Invalid("cyclic group order must be positive".into()));
        }
        Ok(Self { n })
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    fn residue(a: &GroupElement) -> u64 {
        match a {
            GroupElement::Residue(r) => *r,
            _ => unreachable!("operand checked by Group"),
        }
    }
}

impl GroupBackend for Cyclic {
    fn kind(&self) -> &'static str {
        "cyclic"
    }

    fn spec(&self) -> Value {
        json!({"type": "cyclic", "n": self.n})
    }

    fn contains(&self, a: &GroupElement) -> bool {
        matches!(a, GroupElement::Residue(r) if *r < self.n)
    }

    fn identity(&self) -> GroupElement {
        GroupElement::Residue(0)
    }

    fn product(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement::Residue((Self::residue(a) + Self::residue(b)) % self.n)
    }

    fn inverse(&self, a: &GroupElement) -> GroupElement {
        GroupElement::Residue((self.n - Self::residue(a)) % self.n)
    }

    fn primary_generators(&self) -> Vec<GroupElement> {
        if self.n > 1 {
            vec![GroupElement::Residue(1)]
        } else {
            Vec::new()
        }
    }

    fn primary_word(&self, a: &GroupElement) -> Vec<GenLetter> {
        let r = Self::residue(a);
        if r <= self.n - r {
            vec![GenLetter { index: 0, inverse: false }; r as usize]
        } else {
            vec![GenLetter { index: 0, inverse: true }; (self.n - r) as usize]
        }
    }

    fn word_length(&self, a: &GroupElement) -> u64 {
        let r = Self::residue(a);
        r.min(self.n - r)
    }

    fn order(&self) -> Option<usize> {
        Some(self.n as usize)
    }

    fn elements(&self) -> Option<Vec<GroupElement>> {
        Some((0..self.n).map(GroupElement::Residue).collect())
    }

    fn parse_element(&self, literal: &str) -> Result<GroupElement, String> {
        let x: i64 = literal.parse().map_err(|e: std::num::ParseIntError| e.to_string())?;
        Ok(GroupElement::Residue(x.rem_euclid(self.n as i64) as u64))
    }

    fn format_element(&self, a: &GroupElement) -> String {
        match a {
            GroupElement::Residue(r) => r.to_string(),
            other => format!("{other:?}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::group::{Group, GroupElement::Residue};

    #[test]
    fn arithmetic() {
        let c4 = Group::cyclic(4).unwrap();
        assert_eq!(c4.inverse(&Residue(3)).unwrap(), Residue(1));
        assert_eq!(c4.product(&Residue(3), &Residue(3)).unwrap(), Residue(2));
        let lengths: Vec<_> = (0..4).map(|r| c4.word_length(&Residue(r)).unwrap()).collect();
        assert_eq!(lengths, [0, 1, 2, 1]);
        assert_eq!(c4.parse("-1").unwrap(), Residue(3));
    }

    #[test]
    fn trivial_group_has_no_generators() {
        let c1 = Group::cyclic(1).unwrap();
        assert!(c1.generators().is_empty());
        assert_eq!(c1.ball(3).len(), 1);
        assert!(Group::cyclic(0).is_err());
    }

    #[test]
    fn order_two_generators_are_not_repeated() {
        assert_eq!(Group::cyclic(2).unwrap().generators(), vec![Residue(1)]);
    }
}
