mod common;

use std::collections::BTreeMap;

use common::{canonical_oracle, normal_forms};
use gwkit_core::group::{Group, GroupElement};
use gwkit_core::product::{LeftProduct, ProductError, SHUFFLE_BOUND};
use gwkit_core::{GpElement, Graph, GraphProduct, Syllable, Vertex};
use proptest::prelude::*;

fn configs() -> Vec<GraphProduct> {
    let mixed: BTreeMap<Vertex, Group> = [
        (0, Group::cyclic(2).unwrap()),
        (1, Group::cyclic(3).unwrap()),
        (2, Group::integers()),
        (3, Group::cyclic(2).unwrap()),
    ]
    .into_iter()
    .collect();
    let p4 = Graph::path(4).unwrap();
    vec![
        GraphProduct::uniform(Graph::cycle(5).unwrap(), Group::integers()),
        GraphProduct::uniform(p4.clone(), Group::cyclic(3).unwrap()),
        GraphProduct::uniform(Graph::complete(3).unwrap(), Group::cyclic(2).unwrap()),
        GraphProduct::uniform(Graph::from_edges(0..4, []).unwrap(), Group::cyclic(2).unwrap()),
        GraphProduct::per_vertex(p4, mixed).unwrap(),
        GraphProduct::uniform(Graph::cycle(4).unwrap(), Group::free(2).unwrap()),
    ]
}

fn to_syllable(gp: &GraphProduct, v: usize, k: i64) -> Syllable {
    let vs = gp.graph().vertices().unwrap();
    let v = vs[v % vs.len()];
    let g = gp.vertex_group(v).unwrap();
    let elem = match g.kind() {
        "integers" => GroupElement::Int(k % 4),
        "cyclic" => GroupElement::Residue(k.rem_euclid(g.order().unwrap() as i64) as u64),
        _ => {
            let letters = g.generators();
            letters[k.rem_euclid(letters.len() as i64) as usize].clone()
        }
    };
    Syllable::new(v, elem)
}

fn raw_word(max: usize) -> impl Strategy<Value = Vec<(usize, i64)>> {
    prop::collection::vec((0usize..8, -6i64..6), 0..=max)
}

fn word(gp: &GraphProduct, raw: &[(usize, i64)]) -> Vec<Syllable> {
    raw.iter().map(|&(v, k)| to_syllable(gp, v, k)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn normalize_matches_rewrite_oracle(which in 0usize..6, raw in raw_word(6)) {
        let gp = &configs()[which];
        let w = word(gp, &raw);
        let got = gp.normalize(&w)?;
        let oracle = canonical_oracle(gp, &w);
        prop_assert_eq!(got.syllables(), &oracle[..]);
        prop_assert!(gp.is_irreducible(&got.vertex_word()));
        gp.check(&got)?;
    }

    #[test]
    fn shuffle_class_is_every_normal_form(which in 0usize..6, raw in raw_word(5)) {
        let gp = &configs()[which];
        let w = word(gp, &raw);
        let a = gp.normalize(&w)?;
        let class = gp.shuffle_class(&a, SHUFFLE_BOUND)?;
        prop_assert_eq!(class, normal_forms(gp, &w));
    }

    #[test]
    fn graph_product_is_a_group(which in 0usize..6, a in raw_word(5), b in raw_word(5), c in raw_word(5)) {
        let gp = &configs()[which];
        let (a, b, c) = (gp.normalize(&word(gp, &a))?, gp.normalize(&word(gp, &b))?, gp.normalize(&word(gp, &c))?);
        let ab_c = gp.multiply(&gp.multiply(&a, &b)?, &c)?;
        let a_bc = gp.multiply(&a, &gp.multiply(&b, &c)?)?;
        prop_assert_eq!(ab_c, a_bc);
        prop_assert!(gp.multiply(&a, &gp.invert(&a)?)?.is_identity());
        prop_assert_eq!(gp.multiply(&GpElement::identity(), &a)?, a);
    }

    /// Left multiplication by one syllable changes the syllable length by at
    /// most one, in exactly one of three ways.
    #[test]
    fn syllable_step(which in 0usize..6, (v, k) in (0usize..8, -6i64..6), raw in raw_word(6)) {
        let gp = &configs()[which];
        let x = to_syllable(gp, v, k);
        let group = gp.vertex_group(x.vertex)?;
        prop_assume!(!group.is_identity(&x.elem));
        let h = gp.normalize(&word(gp, &raw))?;
        let xh = gp.multiply(&gp.normalize(std::slice::from_ref(&x))?, &h)?;
        let (n, m) = (h.syllable_length(), xh.syllable_length());
        prop_assert!(n <= m + 1 && m <= n + 1);
        let forms = gp.shuffle_class(&xh, SHUFFLE_BOUND)?;
        match gp.classify_left_product(&x, &h)? {
            LeftProduct::Extend => {
                prop_assert_eq!(m, n + 1);
                let mut expected = vec![x.clone()];
                expected.extend(h.syllables().iter().cloned());
                prop_assert!(forms.contains(&expected));
            }
            LeftProduct::Merge(i) => {
                prop_assert_eq!(m, n);
                let mut expected: Vec<Syllable> = h.syllables().to_vec();
                let merged = group.product(&x.elem, &expected[i].elem)?;
                expected.remove(i);
                expected.insert(0, Syllable::new(x.vertex, merged));
                prop_assert!(forms.contains(&expected));
            }
            LeftProduct::Cancel(i) => {
                prop_assert_eq!(m + 1, n);
                let mut expected: Vec<Syllable> = h.syllables().to_vec();
                expected.remove(i);
                prop_assert!(forms.contains(&expected) || (expected.is_empty() && xh.is_identity()));
            }
        }
    }

    /// Relabelling along a graph automorphism is a homomorphism.
    #[test]
    fn bernoulli_is_a_homomorphism(shift in 0i64..5, flip: bool, a in raw_word(5), b in raw_word(5)) {
        let gp = &configs()[0];
        let phi = |v: Vertex| if flip { (shift - v).rem_euclid(5) } else { (v + shift).rem_euclid(5) };
        let (a, b) = (gp.normalize(&word(gp, &a))?, gp.normalize(&word(gp, &b))?);
        let lhs = gp.bernoulli(phi, &gp.multiply(&a, &b)?)?;
        let rhs = gp.multiply(&gp.bernoulli(phi, &a)?, &gp.bernoulli(phi, &b)?)?;
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn bernoulli_rejects_non_automorphisms() {
    let gp = &configs()[0];
    let a = gp.parse("0:1 1:1").unwrap();
    let err = gp.bernoulli(|v| if v == 1 { 2 } else { v }, &a).unwrap_err();
    assert!(matches!(err, ProductError::NotInjective(..) | ProductError::NotAdjacencyPreserving(..)), "{err}");
}

#[test]
fn free_and_direct_products() {
    let z2 = Group::cyclic(2).unwrap();
    let free = GraphProduct::uniform(Graph::from_edges(0..2, []).unwrap(), z2.clone());
    let direct = GraphProduct::uniform(Graph::complete(2).unwrap(), z2);
    let w = free.parse_word("0:1 1:1 0:1 1:1").unwrap();
    assert_eq!(free.normalize(&w).unwrap().syllable_length(), 4);
    assert!(direct.normalize(&w).unwrap().is_identity());
}
