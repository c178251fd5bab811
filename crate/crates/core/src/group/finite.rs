use std::collections::{HashMap, VecDeque};

use super::{GenLetter, GroupElement, GroupError};

/// Breadth-first enumeration of a finite group from its listed generators.
///
/// Records, for every element, its distance from the identity in the Cayley
/// graph over the symmetrized generators and a shortest word in the listed
/// generators. Built once at construction; read-only afterwards.
#[derive(Debug, Clone)]
pub(super) struct CayleyTable {
    pub elements: Vec<GroupElement>,
    index: HashMap<GroupElement, usize>,
    length: Vec<u64>,
    /// `(predecessor, letter)` with `element = predecessor * letter`.
    parent: Vec<Option<(usize, GenLetter)>>,
}

impl CayleyTable {
    pub fn build(
        identity: GroupElement,
        gens: &[GroupElement],
        inverse: impl Fn(&GroupElement) -> GroupElement,
        product: impl Fn(&GroupElement, &GroupElement) -> GroupElement,
        budget: usize,
    ) -> Result<Self, GroupError> {
        let letters: Vec<(GroupElement, GenLetter)> = gens
            .iter()
            .enumerate()
            .flat_map(|(index, g)| {
                [
                    (g.clone(), GenLetter { index, inverse: false }),
                    (inverse(g), GenLetter { index, inverse: true }),
                ]
            })
            .collect();
        let mut table = Self {
            elements: vec![identity.clone()],
            index: HashMap::from([(identity, 0)]),
            length: vec![0],
            parent: vec![None],
        };
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for (s, letter) in &letters {
                let y = product(&table.elements[i], s);
                if table.index.contains_key(&y) {
                    continue;
                }
                if table.elements.len() >= budget {
                    return Err(GroupError::Budget(budget));
                }
                let j = table.elements.len();
                table.index.insert(y.clone(), j);
                table.elements.push(y);
                table.length.push(table.length[i] + 1);
                table.parent.push(Some((i, *letter)));
                queue.push_back(j);
            }
        }
        Ok(table)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, a: &GroupElement) -> bool {
        self.index.contains_key(a)
    }

    pub fn word_length(&self, a: &GroupElement) -> u64 {
        self.length[self.index[a]]
    }

    pub fn word(&self, a: &GroupElement) -> Vec<GenLetter> {
        let mut out = Vec::new();
        let mut i = self.index[a];
        while let Some((prev, letter)) = self.parent[i] {
            out.push(letter);
            i = prev;
        }
        out.reverse();
        out
    }
}
