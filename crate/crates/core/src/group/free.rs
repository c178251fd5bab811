//! Free groups on reduced words, and the length-then-lexicographic ranking
//! of reduced words used to number the vertices of Cayley trees.

use serde_json::{json, Value};

use super::{GenLetter, GroupBackend, GroupElement, GroupError};

/// Letter `2i` is the i-th generator and `2i + 1` its inverse.
pub type Letter = u8;

pub fn inverse_letter(l: Letter) -> Letter {
    l ^ 1
}

/// Appends `letters` to `word`, cancelling adjacent inverse pairs.
pub fn append_reduced(word: &mut Vec<Letter>, letters: impl IntoIterator<Item = Letter>) {
    for l in letters {
        if word.last() == Some(&inverse_letter(l)) {
            word.pop();
        } else {
            word.push(l);
        }
    }
}

pub fn is_reduced(word: &[Letter]) -> bool {
    word.windows(2).all(|w| w[1] != inverse_letter(w[0]))
}

pub fn invert_word(word: &[Letter]) -> Vec<Letter> {
    word.iter().rev().map(|&l| inverse_letter(l)).collect()
}

/// Rank of a reduced word among all reduced words, ordered by length and then
/// lexicographically by letter. `None` on overflow.
pub fn encode(rank: usize, word: &[Letter]) -> Option<i64> {
    if word.is_empty() {
        return Some(0);
    }
    if rank == 0 {
        return None;
    }
    let branching = (2 * rank - 1) as i64;
    let mut offset = 1i64;
    let mut count = (2 * rank) as i64;
    for _ in 1..word.len() {
        offset = offset.checked_add(count)?;
        count = count.checked_mul(branching)?;
    }
    let mut index = word[0] as i64;
    for pair in word.windows(2) {
        let forbidden = inverse_letter(pair[0]);
        let digit = if pair[1] > forbidden { pair[1] - 1 } else { pair[1] } as i64;
        index = index.checked_mul(branching)?.checked_add(digit)?;
    }
    offset.checked_add(index)
}

/// Inverse of [`encode`]. `None` for negative codes or when `rank == 0` and
/// the code is nonzero.
pub fn decode(rank: usize, code: i64) -> Option<Vec<Letter>> {
    if code < 0 {
        return None;
    }
    if code == 0 {
        return Some(Vec::new());
    }
    if rank == 0 {
        return None;
    }
    let branching = (2 * rank - 1) as i64;
    let mut rest = code - 1;
    let mut len = 1;
    let mut count = (2 * rank) as i64;
    while rest >= count {
        rest -= count;
        len += 1;
        count = count.saturating_mul(branching);
    }
    let mut digits = vec![0i64; len];
    for slot in (1..len).rev() {
        digits[slot] = rest % branching;
        rest /= branching;
    }
    digits[0] = rest;
    let mut word: Vec<Letter> = Vec::with_capacity(len);
    word.push(digits[0] as Letter);
    for &d in &digits[1..] {
        let forbidden = inverse_letter(*word.last().unwrap());
        let d = d as Letter;
        word.push(if d >= forbidden { d + 1 } else { d });
    }
    Some(word)
}

/// The free group of the given rank, generated by its basis.
#[derive(Debug, Clone, Copy)]
pub struct FreeGroup {
    rank: usize,
}

impl FreeGroup {
    pub fn new(rank: usize) -> Result<Self, GroupError> {
        if rank > 26 {
            return Err(GroupError::Invalid("free group rank is limited to 26".into()));
        }
        Ok(Self { rank })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    fn word(a: &GroupElement) -> &[Letter] {
        match a {
            GroupElement::Word(w) => w,
            _ => unreachable!("operand checked by Group"),
        }
    }
}

impl GroupBackend for FreeGroup {
    fn kind(&self) -> &'static str {
        "free"
    }

    fn spec(&self) -> Value {
        json!({"type": "free", "rank": self.rank})
    }

    fn contains(&self, a: &GroupElement) -> bool {
        match a {
            GroupElement::Word(w) => {
                w.iter().all(|&l| (l as usize) < 2 * self.rank) && is_reduced(w)
            }
            _ => false,
        }
    }

    fn identity(&self) -> GroupElement {
        GroupElement::Word(Vec::new())
    }

    fn product(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let mut w = Self::word(a).to_vec();
        append_reduced(&mut w, Self::word(b).iter().copied());
        GroupElement::Word(w)
    }

    fn inverse(&self, a: &GroupElement) -> GroupElement {
        GroupElement::Word(invert_word(Self::word(a)))
    }

    fn primary_generators(&self) -> Vec<GroupElement> {
        (0..self.rank)
            .map(|i| GroupElement::Word(vec![(2 * i) as Letter]))
            .collect()
    }

    fn primary_word(&self, a: &GroupElement) -> Vec<GenLetter> {
        Self::word(a)
            .iter()
            .map(|&l| GenLetter {
                index: (l / 2) as usize,
                inverse: l % 2 == 1,
            })
            .collect()
    }

    fn word_length(&self, a: &GroupElement) -> u64 {
        Self::word(a).len() as u64
    }

    fn order(&self) -> Option<usize> {
        (self.rank == 0).then_some(1)
    }

    fn elements(&self) -> Option<Vec<GroupElement>> {
        (self.rank == 0).then(|| vec![self.identity()])
    }

    /// Accepts `1` for the identity, lowercase letters for generators, and
    /// either an uppercase letter or a `^-1` suffix for inverses: `ab^-1a`, `aBa`.
    fn parse_element(&self, literal: &str) -> Result<GroupElement, String> {
        if literal == "1" || literal.is_empty() {
            return Ok(self.identity());
        }
        let mut word = Vec::new();
        let chars: Vec<char> = literal.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let (index, mut inverse) = if c.is_ascii_lowercase() {
                (c as usize - 'a' as usize, false)
            } else if c.is_ascii_uppercase() {
                (c as usize - 'A' as usize, true)
            } else {
                return Err(format!("unexpected character {c:?}"));
            };
            if index >= self.rank {
                return Err(format!("generator {c:?} exceeds rank {}", self.rank));
            }
            i += 1;
            if chars[i..].starts_with(&['^', '-', '1']) {
                inverse = !inverse;
                i += 3;
            }
            let letter = (2 * index + inverse as usize) as Letter;
            append_reduced(&mut word, [letter]);
        }
        Ok(GroupElement::Word(word))
    }

    fn format_element(&self, a: &GroupElement) -> String {
        match a {
            GroupElement::Word(w) if w.is_empty() => "1".to_string(),
            GroupElement::Word(w) => w
                .iter()
                .map(|&l| {
                    let c = (b'a' + l / 2) as char;
                    if l % 2 == 1 {
                        format!("{c}^-1")
                    } else {
                        c.to_string()
                    }
                })
                .collect(),
            other => format!("{other:?}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Group;
    use proptest::prelude::*;

    #[test]
    fn product_reduces() {
        let f2 = Group::free(2).unwrap();
        let ab = f2.parse("ab").unwrap();
        let b_inv_a = f2.parse("b^-1a").unwrap();
        assert_eq!(f2.product(&ab, &b_inv_a).unwrap(), f2.parse("aa").unwrap());
        assert_eq!(f2.word_length(&f2.parse("ab^-1a").unwrap()).unwrap(), 3);
        assert_eq!(f2.parse("aB").unwrap(), f2.parse("ab^-1").unwrap());
        assert_eq!(f2.format(&f2.parse("ab^-1a").unwrap()), "ab^-1a");
        assert!(f2.parse("c").is_err());
    }

    #[test]
    fn non_reduced_words_are_not_members() {
        let f2 = Group::free(2).unwrap();
        assert!(!f2.contains(&GroupElement::Word(vec![0, 1])));
    }

    #[test]
    fn ranking_starts_with_short_words() {
        // e, a, a^-1, b, b^-1, then aa, ab, ab^-1, a^-1a^-1, ...
        let words: Vec<_> = (0..8).map(|c| decode(2, c).unwrap()).collect();
        assert_eq!(words[0], Vec::<u8>::new());
        assert_eq!(words[1..5], [vec![0], vec![1], vec![2], vec![3]]);
        assert_eq!(words[5..8], [vec![0, 0], vec![0, 2], vec![0, 3]]);
        assert_eq!(decode(0, 0), Some(vec![]));
        assert_eq!(decode(0, 1), None);
        assert_eq!(decode(2, -1), None);
    }

    proptest! {
        #[test]
        fn encode_decode_roundtrip(rank in 1usize..4, code in 0i64..200_000) {
            let w = decode(rank, code).unwrap();
            prop_assert!(is_reduced(&w));
            prop_assert_eq!(encode(rank, &w), Some(code));
        }

        #[test]
        fn ranking_is_length_then_lex(rank in 1usize..4, code in 0i64..50_000) {
            let a = decode(rank, code).unwrap();
            let b = decode(rank, code + 1).unwrap();
            prop_assert!((a.len(), &a) < (b.len(), &b));
        }
    }
}
