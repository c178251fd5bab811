//! Random instances for the suites.

use std::collections::BTreeSet;

use gwkit_core::group::{Group, GroupElement};
use gwkit_core::{Graph, GraphProduct, Syllable, Vertex, WreathElement, WreathProduct};
use rand::seq::SliceRandom;
use rand::Rng;

/// A graph on `0..n` with each edge present with probability `p`.
pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let edges: Vec<(Vertex, Vertex)> = crate::oracle::vertex_pairs(n)
        .into_iter()
        .filter(|_| rng.gen_bool(p))
        .collect();
    Graph::from_edges(0..n as Vertex, edges).expect("simple graph")
}

/// A random element: uniform for finite groups, a product of at most
/// `max_len` generators otherwise.
pub fn element(rng: &mut impl Rng, group: &Group, max_len: usize) -> GroupElement {
    if let Some(all) = group.elements() {
        return all.choose(rng).expect("groups are nonempty").clone();
    }
    let gens = group.generators();
    let len = rng.gen_range(0..=max_len);
    (0..len).fold(group.identity(), |acc, _| match gens.choose(rng) {
        Some(s) => group.product(&acc, s).expect("generator"),
        None => acc,
    })
}

/// A non-identity element, or `None` for the trivial group.
pub fn nontrivial_element(rng: &mut impl Rng, group: &Group, max_len: usize) -> Option<GroupElement> {
    if group.generators().is_empty() {
        return None;
    }
    loop {
        let x = element(rng, group, max_len.max(1));
        if !group.is_identity(&x) {
            return Some(x);
        }
    }
}

/// Vertices to sample from: all of a finite graph, or a ball around the
/// base vertex of a lazy one.
pub fn vertex_pool(graph: &Graph, radius: usize, budget: usize) -> Vec<Vertex> {
    match graph.vertices() {
        Some(vs) => vs.to_vec(),
        None => graph
            .ball(graph.base_vertex(), radius, budget)
            .map(|b| b.into_keys().collect())
            .unwrap_or_else(|_| vec![graph.base_vertex()]),
    }
}

/// A raw word of up to `max_len` syllables, identity syllables included.
pub fn word(rng: &mut impl Rng, gp: &GraphProduct, pool: &[Vertex], max_len: usize, elem_len: usize) -> Vec<Syllable> {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| {
            let v = *pool.choose(rng).expect("nonempty vertex pool");
            let g = gp.vertex_group(v).expect("pool vertices carry groups");
            Syllable::new(v, element(rng, g, elem_len))
        })
        .collect()
}

pub fn gp_element(
    rng: &mut impl Rng,
    gp: &GraphProduct,
    pool: &[Vertex],
    max_len: usize,
    elem_len: usize,
) -> gwkit_core::GpElement {
    gp.normalize(&word(rng, gp, pool, max_len, elem_len)).expect("pool vertices carry groups")
}

pub fn wreath_element(
    rng: &mut impl Rng,
    wreath: &WreathProduct,
    pool: &[Vertex],
    max_syllables: usize,
    elem_len: usize,
) -> WreathElement {
    let h = gp_element(rng, wreath.product(), pool, max_syllables, elem_len);
    let g = element(rng, wreath.acting_group(), elem_len);
    WreathElement { h, g }
}

/// A random subset of `pool` of size between 1 and `max`.
pub fn vertex_subset(rng: &mut impl Rng, pool: &[Vertex], max: usize) -> BTreeSet<Vertex> {
    let k = rng.gen_range(1..=max.min(pool.len()).max(1));
    pool.choose_multiple(rng, k).copied().collect()
}
