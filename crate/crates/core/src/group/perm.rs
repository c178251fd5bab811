use serde_json::{json, Value};

use super::finite::CayleyTable;
use super::{GenLetter, GroupBackend, GroupElement, GroupError};

const ENUMERATION_BUDGET: usize = 1 << 20;

/// The subgroup of `Sym(degree)` generated by the listed permutations.
///
/// Permutations are in one-line notation and compose right to left:
/// `(a * b)[i] = a[b[i]]`, so products act on points as `a` after `b`.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Vec<usize>>,
    cayley: CayleyTable,
}

fn perm(a: &GroupElement) -> &[usize] {
    match a {
        GroupElement::Perm(p) => p,
        _ => unreachable!("operand checked by Group"),
    }
}

pub(crate) fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&i| a[i]).collect()
}

pub(crate) fn invert(a: &[usize]) -> Vec<usize> {
    let mut out = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        out[x] = i;
    }
    out
}

pub(crate) fn is_permutation(p: &[usize], degree: usize) -> bool {
    let mut seen = vec![false; degree];
    p.len() == degree && p.iter().all(|&x| x < degree && !std::mem::replace(&mut seen[x], true))
}

impl PermGroup {
    pub fn new(degree: usize, gens: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        for (i, g) in gens.iter().enumerate() {
            if !is_permutation(g, degree) {
                return Err(GroupError::Invalid(format!(
                    "generator {i} ({g:?}) is not a permutation of 0..{degree}"
                )));
            }
        }
        let cayley = CayleyTable::build(
            GroupElement::Perm((0..degree).collect()),
            &gens.iter().cloned().map(GroupElement::Perm).collect::<Vec<_>>(),
            |a| GroupElement::Perm(invert(perm(a))),
            |a, b| GroupElement::Perm(compose(perm(a), perm(b))),
            ENUMERATION_BUDGET,
        )?;
        Ok(Self { degree, gens, cayley })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }
}

impl GroupBackend for PermGroup {
    fn kind(&self) -> &'static str {
        "perm"
    }

    fn spec(&self) -> Value {
        json!({"type": "perm", "degree": self.degree, "gens": self.gens})
    }

    fn contains(&self, a: &GroupElement) -> bool {
        self.cayley.contains(a)
    }

    fn identity(&self) -> GroupElement {
        GroupElement::Perm((0..self.degree).collect())
    }

    fn product(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement::Perm(compose(perm(a), perm(b)))
    }

    fn inverse(&self, a: &GroupElement) -> GroupElement {
        GroupElement::Perm(invert(perm(a)))
    }

    fn primary_generators(&self) -> Vec<GroupElement> {
        self.gens.iter().cloned().map(GroupElement::Perm).collect()
    }

    fn primary_word(&self, a: &GroupElement) -> Vec<GenLetter> {
        self.cayley.word(a)
    }

    fn word_length(&self, a: &GroupElement) -> u64 {
        self.cayley.word_length(a)
    }

    fn order(&self) -> Option<usize> {
        Some(self.cayley.len())
    }

    fn elements(&self) -> Option<Vec<GroupElement>> {
        let mut all = self.cayley.elements.clone();
        all.sort();
        Some(all)
    }

    /// One-line notation, `[1,0,2]` or `1,0,2`.
    fn parse_element(&self, literal: &str) -> Result<GroupElement, String> {
        let body = literal.trim_start_matches('[').trim_end_matches(']');
        let p = body
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|e| e.to_string()))
            .collect::<Result<Vec<_>, _>>()?;
        if !is_permutation(&p, self.degree) {
            return Err(format!("not a permutation of 0..{}", self.degree));
        }
        Ok(GroupElement::Perm(p))
    }

    fn format_element(&self, a: &GroupElement) -> String {
        let items: Vec<String> = perm(a).iter().map(usize::to_string).collect();
        format!("[{}]", items.join(","))
    }
}

#[cfg(test)]
mod tests {
    use crate::group::{Group, GroupElement};
    use std::collections::{BTreeMap, VecDeque};

    fn s3() -> Group {
        Group::perm(3, vec![vec![1, 0, 2], vec![0, 2, 1]]).unwrap()
    }

    /// Cayley-graph distances computed independently from the backend.
    fn bfs_lengths(gens: &[Vec<usize>]) -> BTreeMap<Vec<usize>, u64> {
        let mut dist = BTreeMap::from([((0..3).collect::<Vec<_>>(), 0)]);
        let mut queue = VecDeque::from([(0..3).collect::<Vec<usize>>()]);
        while let Some(p) = queue.pop_front() {
            let d = dist[&p];
            for g in gens {
                let q: Vec<usize> = (0..3).map(|i| p[g[i]]).collect();
                if !dist.contains_key(&q) {
                    dist.insert(q.clone(), d + 1);
                    queue.push_back(q);
                }
            }
        }
        dist
    }

    #[test]
    fn transposition_lengths_in_s3() {
        let g = s3();
        let oracle = bfs_lengths(&[vec![1, 0, 2], vec![0, 2, 1]]);
        assert_eq!(oracle.len(), 6);
        for (p, d) in &oracle {
            assert_eq!(g.word_length(&GroupElement::Perm(p.clone())).unwrap(), *d);
        }
        // (1 3) is the longest element: s1 s2 s1.
        let t13 = g.parse("[2,1,0]").unwrap();
        assert_eq!(g.word_length(&t13).unwrap(), 3);
        assert_eq!(oracle[&vec![2, 1, 0]], 3);
    }

    #[test]
    fn composition_order_and_words() {
        let g = s3();
        let a = g.parse("[1,0,2]").unwrap();
        let b = g.parse("[0,2,1]").unwrap();
        // (a*b)[i] = a[b[i]]
        assert_eq!(g.product(&a, &b).unwrap(), GroupElement::Perm(vec![1, 2, 0]));
        for x in g.elements().unwrap() {
            let mut acc = g.identity();
            for l in g.primary_word(&x).unwrap() {
                let s = &g.primary_generators()[l.index];
                let s = if l.inverse { g.inverse(s).unwrap() } else { s.clone() };
                acc = g.product(&acc, &s).unwrap();
            }
            assert_eq!(acc, x);
        }
    }

    #[test]
    fn generated_subgroup_only() {
        let c3 = Group::perm(3, vec![vec![1, 2, 0]]).unwrap();
        assert_eq!(c3.order(), Some(3));
        assert!(!c3.contains(&GroupElement::Perm(vec![1, 0, 2])));
        assert!(Group::perm(3, vec![vec![0, 0, 1]]).is_err());
    }
}
