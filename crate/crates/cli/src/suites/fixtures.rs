//! Built-in actions shared by several suites.

use gwkit_core::action::GraphAction;
use gwkit_core::group::Group;
use gwkit_core::lengths::LengthSystem;
use gwkit_core::{Graph, Vertex, WreathProduct};

use super::{setup, SuiteContext, SuiteError};

/// The dihedral group of order `2n` on the n-cycle.
pub fn dihedral(n: usize) -> GraphAction {
    let rotate: Vec<usize> = (0..n).map(|v| (v + 1) % n).collect();
    let reflect: Vec<usize> = (0..n).map(|v| (n - v) % n).collect();
    let group = Group::perm(n, vec![rotate.clone(), reflect.clone()]).expect("dihedral group");
    let images = [rotate, reflect]
        .into_iter()
        .map(|p| p.into_iter().map(|v| v as Vertex).collect())
        .collect();
    GraphAction::permutation(group, Graph::cycle(n).expect("cycle"), images).expect("dihedral action")
}

/// `Z/2` reversing the path on `n` vertices.
pub fn path_flip(n: usize) -> GraphAction {
    let image = (0..n).rev().map(|v| v as Vertex).collect();
    GraphAction::permutation(
        Group::cyclic(2).expect("Z/2"),
        Graph::path(n).expect("path"),
        vec![image],
    )
    .expect("path reversal")
}

/// The half-turn of the 4-cycle.
pub fn half_turn() -> GraphAction {
    GraphAction::permutation(
        Group::cyclic(2).expect("Z/2"),
        Graph::cycle(4).expect("C4"),
        vec![vec![2, 3, 0, 1]],
    )
    .expect("half-turn")
}

/// Wreath products used for the length and m-map suites.
pub fn wreath_products() -> Vec<WreathProduct> {
    let z2 = Group::cyclic(2).expect("Z/2");
    vec![
        WreathProduct::new(GraphAction::shift(), Group::integers()),
        WreathProduct::new(GraphAction::rotation(5, 5, 1).expect("rotation"), Group::cyclic(3).expect("Z/3")),
        WreathProduct::new(GraphAction::left_multiplication(2).expect("free action"), z2),
        WreathProduct::new(dihedral(4), Group::integers()),
        WreathProduct::new(
            GraphAction::trivial(Graph::cycle(5).expect("C5")).expect("trivial action"),
            Group::free(2).expect("F2"),
        ),
    ]
}

/// Length systems for the configured wreath product, or the built-in ones.
pub fn length_systems(suite: &'static str, ctx: &SuiteContext) -> Result<Vec<LengthSystem>, SuiteError> {
    let wreaths = match ctx.config.filter(|c| c.action.is_some()) {
        Some(cfg) => vec![cfg.wreath()?],
        None => wreath_products(),
    };
    wreaths
        .into_iter()
        .map(|w| LengthSystem::with_budget(w, ctx.budget).map_err(|e| setup(suite, e)))
        .collect()
}

/// All vertices of a finite graph, or the radius-3 ball of a lazy one.
pub fn pool(system: &LengthSystem, budget: usize) -> Vec<Vertex> {
    crate::sample::vertex_pool(system.wreath().action().graph(), 3, budget)
}
