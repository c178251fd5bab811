use serde_json::{json, Value};

use super::{GenLetter, GroupBackend, GroupElement};

/// The additive group of integers with generators `±1`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Integers;

impl GroupBackend for Integers {
    fn kind(&self) -> &'static str {
        "integers"
    }

    fn spec(&self) -> Value {
        json!({"type": "integers"})
    }

    fn contains(&self, a: &GroupElement) -> bool {
        matches!(a, GroupElement::Int(_))
    }

    fn identity(&self) -> GroupElement {
        GroupElement::Int(0)
    }

    fn product(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        match (a, b) {
            (GroupElement::Int(x), GroupElement::Int(y)) => GroupElement::Int(x + y),
            _ => unreachable!("operands checked by Group"),
        }
    }

    fn inverse(&self, a: &GroupElement) -> GroupElement {
        match a {
            GroupElement::Int(x) => GroupElement::Int(-x),
            _ => unreachable!("operand checked by Group"),
        }
    }

    fn primary_generators(&self) -> Vec<GroupElement> {
        vec![GroupElement::Int(1)]
    }

    fn primary_word(&self, a: &GroupElement) -> Vec<GenLetter> {
        let GroupElement::Int(x) = a else { unreachable!() };
        let letter = GenLetter {
            index: 0,
            inverse: *x < 0,
        };
        vec![letter; x.unsigned_abs() as usize]
    }

    fn word_length(&self, a: &GroupElement) -> u64 {
        let GroupElement::Int(x) = a else { unreachable!() };
        x.unsigned_abs()
    }

    fn order(&self) -> Option<usize> {
        None
    }

    fn parse_element(&self, literal: &str) -> Result<GroupElement, String> {
        literal
            .parse::<i64>()
            .map(GroupElement::Int)
            .map_err(|e| e.to_string())
    }

    fn format_element(&self, a: &GroupElement) -> String {
        match a {
            GroupElement::Int(x) => x.to_string(),
            other => format!("{other:?}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::group::{Group, GroupElement::Int};

    #[test]
    fn arithmetic() {
        let z = Group::integers();
        assert_eq!(z.product(&Int(3), &Int(-5)).unwrap(), Int(-2));
        assert_eq!(z.word_length(&Int(-7)).unwrap(), 7);
        assert_eq!(z.parse("-12").unwrap(), Int(-12));
    }
}
