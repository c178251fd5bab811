use serde_json::{json, Value};

use super::finite::CayleyTable;
use super::{GenLetter, GroupBackend, GroupElement, GroupError};

/// A finite group given by its multiplication table, `mul[a][b] = a * b`.
#[derive(Debug, Clone)]
pub struct TableGroup {
    mul: Vec<Vec<usize>>,
    listed_gens: Option<Vec<usize>>,
    gens: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
    cayley: CayleyTable,
}

impl TableGroup {
    /// Validates `mul` as a group table. Without `gens`, every non-identity
    /// element is a generator.
    pub fn new(mul: Vec<Vec<usize>>, gens: Option<Vec<usize>>) -> Result<Self, GroupError> {
        let n = mul.len();
        let bad = |m: String| Err(GroupError::Invalid(m));
        if n == 0 {
            return bad("empty multiplication table".into());
        }
        for (a, row) in mul.iter().enumerate() {
            if row.len() != n {
                return bad(format!("row {a} has length {} but the table has {n} rows", row.len()));
            }
            let mut seen = vec![false; n];
            for &x in row {
                if x >= n || std::mem::replace(&mut seen[x], true) {
                    return bad(format!("row {a} is not a permutation of 0..{n}"));
                }
            }
        }
        for b in 0..n {
            let mut seen = vec![false; n];
            for row in &mul {
                if std::mem::replace(&mut seen[row[b]], true) {
                    return bad(format!("column {b} is not a permutation of 0..{n}"));
                }
            }
        }
        let Some(identity) = (0..n).find(|&e| (0..n).all(|x| mul[e][x] == x && mul[x][e] == x)) else {
            return bad("table has no two-sided identity".into());
        };
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return bad(format!("not associative at ({a}, {b}, {c})"));
                    }
                }
            }
        }
        let inverse: Vec<usize> = (0..n)
            .map(|a| (0..n).find(|&b| mul[a][b] == identity).expect("latin square"))
            .collect();
        let gen_list = match &gens {
            Some(g) => {
                if let Some(&x) = g.iter().find(|&&x| x >= n) {
                    return bad(format!("generator {x} out of range"));
                }
                g.clone()
            }
            None => (0..n).filter(|&x| x != identity).collect(),
        };
        let cayley = CayleyTable::build(
            GroupElement::Index(identity),
            &gen_list.iter().map(|&x| GroupElement::Index(x)).collect::<Vec<_>>(),
            |a| GroupElement::Index(inverse[idx(a)]),
            |a, b| GroupElement::Index(mul[idx(a)][idx(b)]),
            n + 1,
        )?;
        if cayley.len() != n {
            return bad(format!(
                "generators {gen_list:?} generate only {} of {n} elements",
                cayley.len()
            ));
        }
        Ok(Self {
            mul,
            listed_gens: gens,
            gens: gen_list,
            identity,
            inverse,
            cayley,
        })
    }
}

fn idx(a: &GroupElement) -> usize {
    match a {
        GroupElement::Index(i) => *i,
        _ => unreachable!("operand checked by Group"),
    }
}

impl GroupBackend for TableGroup {
    fn kind(&self) -> &'static str {
        "table"
    }

    fn spec(&self) -> Value {
        match &self.listed_gens {
            Some(g) => json!({"type": "table", "mul": self.mul, "gens": g}),
            None => json!({"type": "table", "mul": self.mul}),
        }
    }

    fn contains(&self, a: &GroupElement) -> bool {
        matches!(a, GroupElement::Index(i) if *i < self.mul.len())
    }

    fn identity(&self) -> GroupElement {
        GroupElement::Index(self.identity)
    }

    fn product(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement::Index(self.mul[idx(a)][idx(b)])
    }

    fn inverse(&self, a: &GroupElement) -> GroupElement {
        GroupElement::Index(self.inverse[idx(a)])
    }

    fn primary_generators(&self) -> Vec<GroupElement> {
        self.gens.iter().map(|&x| GroupElement::Index(x)).collect()
    }

    fn primary_word(&self, a: &GroupElement) -> Vec<GenLetter> {
        self.cayley.word(a)
    }

    fn word_length(&self, a: &GroupElement) -> u64 {
        self.cayley.word_length(a)
    }

    fn order(&self) -> Option<usize> {
        Some(self.mul.len())
    }

    fn elements(&self) -> Option<Vec<GroupElement>> {
        Some((0..self.mul.len()).map(GroupElement::Index).collect())
    }

    fn parse_element(&self, literal: &str) -> Result<GroupElement, String> {
        literal
            .parse::<usize>()
            .map(GroupElement::Index)
            .map_err(|e| e.to_string())
    }

    fn format_element(&self, a: &GroupElement) -> String {
        idx(a).to_string()
    }
}

#[cfg(test)]
mod tests {
    use crate::group::{Group, GroupElement::Index};

    fn klein() -> Vec<Vec<usize>> {
        vec![vec![0, 1, 2, 3], vec![1, 0, 3, 2], vec![2, 3, 0, 1], vec![3, 2, 1, 0]]
    }

    #[test]
    fn klein_four_group() {
        let v = Group::table(klein(), Some(vec![1, 2])).unwrap();
        assert_eq!(v.word_length(&Index(3)).unwrap(), 2);
        assert_eq!(v.inverse(&Index(3)).unwrap(), Index(3));
        let all = Group::table(klein(), None).unwrap();
        assert_eq!(all.word_length(&Index(3)).unwrap(), 1);
    }

    #[test]
    fn rejects_non_groups() {
        assert!(Group::table(vec![vec![0, 1], vec![1, 1]], None).is_err());
        assert!(Group::table(vec![vec![0, 2, 1], vec![2, 1, 0], vec![1, 0, 2]], None).is_err());
        assert!(Group::table(klein(), Some(vec![1])).is_err());
        // Latin square with identity that is not associative.
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = Group::table(loop5, None).unwrap_err();
        assert!(err.to_string().contains("associative"), "{err}");
    }
}
