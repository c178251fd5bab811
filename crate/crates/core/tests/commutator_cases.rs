use std::collections::BTreeSet;

use gwkit_core::action::GraphAction;
use gwkit_core::commutator::{commutator_coeff, crossed_commutator_coeff, smallness_witness, DiagSymbol};
use gwkit_core::group::{Group, GroupElement};
use gwkit_core::{GpElement, Graph, GraphProduct, Vertex, WreathProduct};
use num_rational::Rational64;
use num_traits::Zero;

fn symbols(v: Vertex) -> Vec<DiagSymbol> {
    let r = |k| GroupElement::Residue(k);
    vec![
        DiagSymbol::delta(v, r(0)),
        DiagSymbol::delta(v, r(1)),
        DiagSymbol::new(v, [(r(1), Rational64::new(1, 2)), (r(2), Rational64::from_integer(-3))]),
    ]
}

/// Exhaustive check of the case formula on a path with `Z/3` vertex groups.
#[test]
fn case_formula_on_a_ball() {
    let graph = Graph::path(4).unwrap();
    let gp = GraphProduct::uniform(graph.clone(), Group::cyclic(3).unwrap());
    let z3 = Group::cyclic(3).unwrap();
    let ball = gp.syllable_ball(3, 0).unwrap();
    for v in 0..4 {
        let star = graph.star(v).unwrap();
        for f in symbols(v) {
            for w in 0..4 {
                for h in [GroupElement::Residue(1), GroupElement::Residue(2)] {
                    for x in &ball {
                        let (c, target) = commutator_coeff(&gp, &f, w, &h, x).unwrap();
                        assert_eq!(target, gp.multiply(x, &gp.syllable(w, z3.inverse(&h).unwrap()).unwrap()).unwrap());
                        if !c.is_zero() {
                            assert_eq!(v, w);
                            assert!(x.support().is_subset(&star) && target.support().is_subset(&star));
                            assert!(gp.leading_index(x, v).is_some() || gp.leading_index(&target, v).is_some());
                        }
                        if v == w && x.support().is_subset(&star) {
                            let a = gp.leading_syllable(x, v).unwrap();
                            let ah = z3.product(&a, &z3.inverse(&h).unwrap()).unwrap();
                            assert_eq!(c, f.eval(&ah) - f.eval(&a));
                        }
                    }
                }
            }
        }
    }
}

/// Nonzero crossed coefficients need `v = g·w`, so the contributing `g` form
/// part of one coset of the stabilizer of `w`.
#[test]
fn crossed_coefficients_live_on_one_coset() {
    let rotation = GraphAction::rotation(4, 4, 1).unwrap();
    let d4 = {
        let g = Group::perm(4, vec![vec![1, 2, 3, 0], vec![0, 3, 2, 1]]).unwrap();
        GraphAction::permutation(g, Graph::cycle(4).unwrap(), vec![vec![1, 2, 3, 0], vec![0, 3, 2, 1]]).unwrap()
    };
    for action in [rotation, d4] {
        let wreath = WreathProduct::new(action.clone(), Group::cyclic(3).unwrap());
        let ball = wreath.product().syllable_ball(2, 0).unwrap();
        let elements = action.group().elements().unwrap();
        let h = GroupElement::Residue(1);
        for f in symbols(0) {
            for w in 0..4 {
                let stab = action.transporter(w, w).unwrap().len();
                for x in &ball {
                    let mut nonzero = BTreeSet::new();
                    for g in &elements {
                        let z = wreath.element(x.clone(), g.clone()).unwrap();
                        let (c, target) = crossed_commutator_coeff(&wreath, &f, w, &h, &z).unwrap();
                        let plain = commutator_coeff(wreath.product(), &f, action.act(g, w).unwrap(), &h, x).unwrap();
                        assert_eq!((c, &target.h), (plain.0, &plain.1));
                        assert_eq!(&target.g, g);
                        if !c.is_zero() {
                            assert_eq!(action.act(g, w).unwrap(), 0);
                            nonzero.insert(g.clone());
                        }
                    }
                    assert!(nonzero.len() <= stab);
                }
            }
        }
    }
}

#[test]
fn identity_group_part_reduces_to_plain_coefficient() {
    let wreath = WreathProduct::new(GraphAction::shift(), Group::cyclic(3).unwrap());
    let gp = wreath.product();
    let f = DiagSymbol::delta(0, GroupElement::Residue(2));
    for x in ["e", "0:1", "1:2 0:1", "-1:1 1:1"] {
        let x = gp.parse(x).unwrap();
        let z = wreath.from_h(x.clone());
        let crossed = crossed_commutator_coeff(&wreath, &f, 0, &GroupElement::Residue(1), &z).unwrap();
        let plain = commutator_coeff(gp, &f, 0, &GroupElement::Residue(1), &x).unwrap();
        assert_eq!(crossed.0, plain.0);
        assert_eq!(crossed.1.h, plain.1);
    }
}

#[test]
fn covers_verify_on_four_vertex_graphs() {
    let graphs = [Graph::path(4).unwrap(), Graph::cycle(4).unwrap(), Graph::from_edges([], [(0, 1), (0, 2), (0, 3)]).unwrap()];
    for graph in graphs {
        let gp = GraphProduct::uniform(graph, Group::cyclic(3).unwrap());
        for v in 0..4 {
            for f in symbols(v) {
                for w in 0..4 {
                    let cert = smallness_witness(&gp, &f, w, &GroupElement::Residue(1), 3, 0).unwrap();
                    assert!(cert.cover.translates.len() <= 6);
                    if v != w {
                        assert_eq!(cert.nonzero, 0);
                    }
                }
            }
        }
    }
    let gp = GraphProduct::uniform(Graph::path(4).unwrap(), Group::cyclic(3).unwrap());
    assert!(gp.leading_index(&GpElement::identity(), 0).is_none());
}
