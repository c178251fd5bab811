use gwkit_core::group::{GenLetter, Group, GroupElement};
use proptest::prelude::*;

fn groups() -> Vec<Group> {
    let klein = vec![vec![0, 1, 2, 3], vec![1, 0, 3, 2], vec![2, 3, 0, 1], vec![3, 2, 1, 0]];
    vec![
        Group::integers(),
        Group::cyclic(6).unwrap(),
        Group::free(2).unwrap(),
        Group::free(3).unwrap(),
        Group::perm(3, vec![vec![1, 0, 2], vec![0, 2, 1]]).unwrap(),
        Group::perm(4, vec![vec![1, 2, 3, 0], vec![0, 3, 2, 1]]).unwrap(),
        Group::table(klein, Some(vec![1, 2])).unwrap(),
    ]
}

/// Evaluates a word in the listed generators.
fn evaluate(g: &Group, letters: &[GenLetter]) -> GroupElement {
    let gens = g.primary_generators();
    letters.iter().fold(g.identity(), |acc, l| {
        let s = if l.inverse { g.inverse(&gens[l.index]).unwrap() } else { gens[l.index].clone() };
        g.product(&acc, &s).unwrap()
    })
}

fn element(g: &Group, raw: &[(usize, bool)]) -> GroupElement {
    let n = g.primary_generators().len();
    let letters: Vec<GenLetter> = raw
        .iter()
        .map(|&(i, inverse)| GenLetter { index: i % n, inverse })
        .collect();
    evaluate(g, &letters)
}

fn word() -> impl Strategy<Value = Vec<(usize, bool)>> {
    prop::collection::vec((0usize..8, any::<bool>()), 0..12)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn group_axioms(which in 0usize..7, a in word(), b in word(), c in word()) {
        let g = &groups()[which];
        let (a, b, c) = (element(g, &a), element(g, &b), element(g, &c));
        let e = g.identity();
        prop_assert_eq!(g.product(&g.product(&a, &b)?, &c)?, g.product(&a, &g.product(&b, &c)?)?);
        prop_assert_eq!(g.product(&a, &e)?, a.clone());
        prop_assert_eq!(g.product(&e, &a)?, a.clone());
        prop_assert_eq!(g.product(&a, &g.inverse(&a)?)?, e.clone());
        prop_assert_eq!(g.product(&g.inverse(&a)?, &a)?, e);
    }

    #[test]
    fn word_length_laws(which in 0usize..7, a in word(), b in word()) {
        let g = &groups()[which];
        let (a, b) = (element(g, &a), element(g, &b));
        let (la, lb) = (g.word_length(&a)?, g.word_length(&b)?);
        prop_assert!(g.word_length(&g.product(&a, &b)?)? <= la + lb);
        prop_assert_eq!(g.word_length(&g.inverse(&a)?)?, la);
        prop_assert_eq!(la == 0, g.is_identity(&a));
        for s in g.generators() {
            prop_assert_eq!(g.word_length(&s)?, 1);
        }
    }

    #[test]
    fn primary_words_evaluate_back(which in 0usize..7, a in word()) {
        let g = &groups()[which];
        let a = element(g, &a);
        let w = g.primary_word(&a)?;
        prop_assert_eq!(evaluate(g, &w), a);
    }

    #[test]
    fn parse_format_round_trip(which in 0usize..7, a in word()) {
        let g = &groups()[which];
        let a = element(g, &a);
        prop_assert_eq!(g.parse(&g.format(&a))?, a);
    }
}

/// Word length equals BFS distance in the Cayley graph, for every finite group.
#[test]
fn finite_word_lengths_are_cayley_distances() {
    for g in groups().into_iter().filter(Group::is_finite) {
        let gens = g.generators();
        let mut dist = std::collections::BTreeMap::from([(g.identity(), 0u64)]);
        let mut frontier = vec![g.identity()];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for a in &frontier {
                for s in &gens {
                    let b = g.product(a, s).unwrap();
                    if !dist.contains_key(&b) {
                        dist.insert(b.clone(), dist[a] + 1);
                        next.push(b);
                    }
                }
            }
            frontier = next;
        }
        assert_eq!(dist.len(), g.order().unwrap());
        for (a, d) in dist {
            assert_eq!(g.word_length(&a).unwrap(), d);
        }
    }
}

#[test]
fn free_ball_sizes() {
    for (rank, expected) in [(1usize, [1usize, 3, 5, 7]), (2, [1, 5, 17, 53])] {
        let g = Group::free(rank).unwrap();
        for (r, &n) in expected.iter().enumerate() {
            assert_eq!(g.ball(r as u64).len(), n);
        }
    }
}
