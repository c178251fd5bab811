//! Brute-force oracles, independent of the library algorithms they check.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use gwkit_core::action::GraphAction;
use gwkit_core::graph::Multigraph;
use gwkit_core::{Graph, GraphProduct, Syllable, Vertex};

/// Every word reachable from `word` by swapping adjacent commuting
/// syllables, merging adjacent syllables at one vertex, or deleting an
/// identity syllable.
pub fn rewrite_closure(gp: &GraphProduct, word: &[Syllable]) -> BTreeSet<Vec<Syllable>> {
    let mut seen = BTreeSet::from([word.to_vec()]);
    let mut queue = VecDeque::from([word.to_vec()]);
    while let Some(w) = queue.pop_front() {
        for i in 0..w.len() {
            let group = gp.vertex_group(w[i].vertex).expect("checked words");
            let mut next = Vec::new();
            if group.is_identity(&w[i].elem) {
                let mut x = w.clone();
                x.remove(i);
                next.push(x);
            }
            if let Some(b) = w.get(i + 1) {
                let a = &w[i];
                if a.vertex == b.vertex {
                    let mut x = w.clone();
                    x[i] = Syllable::new(a.vertex, group.product(&a.elem, &b.elem).expect("same group"));
                    x.remove(i + 1);
                    next.push(x);
                } else if gp.graph().adjacent(a.vertex, b.vertex) {
                    let mut x = w.clone();
                    x.swap(i, i + 1);
                    next.push(x);
                }
            }
            for x in next {
                if seen.insert(x.clone()) {
                    queue.push_back(x);
                }
            }
        }
    }
    seen
}

/// The shortest words reachable from `word`: the normal forms of its product.
pub fn normal_forms(gp: &GraphProduct, word: &[Syllable]) -> BTreeSet<Vec<Syllable>> {
    let all = rewrite_closure(gp, word);
    let min = all.iter().map(Vec::len).min().unwrap_or(0);
    all.into_iter().filter(|w| w.len() == min).collect()
}

/// The normal form with the lexicographically least vertex sequence.
pub fn canonical_form(gp: &GraphProduct, word: &[Syllable]) -> Vec<Syllable> {
    normal_forms(gp, word)
        .into_iter()
        .min_by_key(|w| w.iter().map(|s| s.vertex).collect::<Vec<_>>())
        .unwrap_or_default()
}

/// All graphs on `0..n`, one per edge subset, in mask order.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    let pairs = vertex_pairs(n);
    (0u64..1 << pairs.len())
        .map(|mask| graph_from_mask(n, &pairs, mask))
        .collect()
}

pub fn vertex_pairs(n: usize) -> Vec<(Vertex, Vertex)> {
    (0..n as Vertex)
        .flat_map(|u| (u + 1..n as Vertex).map(move |w| (u, w)))
        .collect()
}

pub fn graph_from_mask(n: usize, pairs: &[(Vertex, Vertex)], mask: u64) -> Graph {
    let edges = pairs
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, &e)| e);
    Graph::from_edges(0..n as Vertex, edges).expect("simple graph")
}

fn adjacency_matrix(g: &Graph) -> Vec<Vec<bool>> {
    let vs = g.vertices().expect("finite graph");
    vs.iter().map(|&u| vs.iter().map(|&w| g.adjacent(u, w)).collect()).collect()
}

/// Shortest circuit, enumerating simple cycles from their least vertex.
pub fn girth(g: &Graph) -> Option<usize> {
    fn extend(adj: &[Vec<bool>], start: usize, path: &mut Vec<usize>, best: &mut Option<usize>) {
        let last = *path.last().unwrap();
        for next in start..adj.len() {
            if !adj[last][next] {
                continue;
            }
            if next == start && path.len() >= 3 {
                *best = Some(best.map_or(path.len(), |b| b.min(path.len())));
            } else if next > start && !path.contains(&next) && best.is_none_or(|b| path.len() + 1 < b) {
                path.push(next);
                extend(adj, start, path, best);
                path.pop();
            }
        }
    }
    let adj = adjacency_matrix(g);
    let mut best = None;
    for s in 0..adj.len() {
        extend(&adj, s, &mut vec![s], &mut best);
    }
    best
}

/// `Lk(v) ⊄ St(w)` for every ordered pair `v ≠ w`.
pub fn untransvectable(g: &Graph) -> bool {
    let adj = adjacency_matrix(g);
    let n = adj.len();
    (0..n).all(|v| {
        (0..n)
            .filter(|&w| w != v)
            .all(|w| (0..n).any(|x| adj[v][x] && x != w && !adj[w][x]))
    })
}

/// `None` when some vertex is isolated, else whether `Lk(Lk v) = {v}` for all `v`.
pub fn rigid(g: &Graph) -> Option<bool> {
    let adj = adjacency_matrix(g);
    let n = adj.len();
    let links: Vec<Vec<usize>> = (0..n).map(|v| (0..n).filter(|&x| adj[v][x]).collect()).collect();
    if links.iter().any(Vec::is_empty) {
        return None;
    }
    Some((0..n).all(|v| {
        let common: Vec<usize> = (0..n).filter(|&y| links[v].iter().all(|&x| adj[x][y])).collect();
        common == [v]
    }))
}

/// The quotient of a finite action by applying every group element to every
/// vertex and edge.
pub fn quotient_by_enumeration(action: &GraphAction) -> Option<Multigraph> {
    let elements = action.group().elements()?;
    let graph = action.graph();
    let vertices = graph.vertices()?;
    let orbit_min = |v: Vertex| elements.iter().map(|g| action.act(g, v).unwrap()).min().unwrap();
    let reps: BTreeSet<Vertex> = vertices.iter().map(|&v| orbit_min(v)).collect();
    let mut edge_orbits: BTreeMap<(Vertex, Vertex), ()> = BTreeMap::new();
    let mut quotient = Multigraph::new(reps, []).ok()?;
    for (u, w) in graph.edges().ok()? {
        let key = elements
            .iter()
            .map(|g| {
                let (a, b) = (action.act(g, u).unwrap(), action.act(g, w).unwrap());
                (a.min(b), a.max(b))
            })
            .min()
            .unwrap();
        if edge_orbits.insert(key, ()).is_none() {
            quotient.add_edge(orbit_min(u), orbit_min(w), 1).ok()?;
        }
    }
    Some(quotient)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_examples() {
        assert_eq!(girth(&Graph::cycle(5).unwrap()), Some(5));
        assert_eq!(girth(&Graph::path(4).unwrap()), None);
        assert_eq!(girth(&Graph::complete(4).unwrap()), Some(3));
        assert!(untransvectable(&Graph::cycle(5).unwrap()));
        assert!(!untransvectable(&Graph::path(3).unwrap()));
        assert_eq!(rigid(&Graph::cycle(5).unwrap()), Some(true));
        assert_eq!(rigid(&Graph::cycle(4).unwrap()), Some(false));
        assert_eq!(all_graphs(4).len(), 64);
    }
}
