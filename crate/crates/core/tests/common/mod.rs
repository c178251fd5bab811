#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use gwkit_core::group::GroupElement;
use gwkit_core::{Graph, GraphProduct, Syllable, Vertex};

/// Every word reachable from `word` by swapping adjacent commuting
/// syllables, merging adjacent syllables at one vertex and deleting identity
/// syllables. The shortest reachable words are the normal forms.
pub fn rewrite_closure(gp: &GraphProduct, word: &[Syllable]) -> BTreeSet<Vec<Syllable>> {
    let mut seen = BTreeSet::from([word.to_vec()]);
    let mut queue = VecDeque::from([word.to_vec()]);
    while let Some(w) = queue.pop_front() {
        let mut next = Vec::new();
        for i in 0..w.len() {
            let g = gp.vertex_group(w[i].vertex).unwrap();
            if g.is_identity(&w[i].elem) {
                let mut x = w.clone();
                x.remove(i);
                next.push(x);
            }
            if i + 1 < w.len() {
                let (a, b) = (&w[i], &w[i + 1]);
                if a.vertex == b.vertex {
                    let mut x = w.clone();
                    x[i] = Syllable::new(a.vertex, g.product(&a.elem, &b.elem).unwrap());
                    x.remove(i + 1);
                    next.push(x);
                } else if gp.graph().adjacent(a.vertex, b.vertex) {
                    let mut x = w.clone();
                    x.swap(i, i + 1);
                    next.push(x);
                }
            }
        }
        for x in next {
            if seen.insert(x.clone()) {
                queue.push_back(x);
            }
        }
    }
    seen
}

/// The shortest reachable words.
pub fn normal_forms(gp: &GraphProduct, word: &[Syllable]) -> BTreeSet<Vec<Syllable>> {
    let all = rewrite_closure(gp, word);
    let min = all.iter().map(Vec::len).min().unwrap();
    all.into_iter().filter(|w| w.len() == min).collect()
}

/// The normal form whose vertex sequence is lexicographically least.
pub fn canonical_oracle(gp: &GraphProduct, word: &[Syllable]) -> Vec<Syllable> {
    normal_forms(gp, word)
        .into_iter()
        .min_by_key(|w| w.iter().map(|s| s.vertex).collect::<Vec<_>>())
        .unwrap()
}

/// All simple graphs on `0..n`, one per edge subset.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(Vertex, Vertex)> = (0..n as Vertex)
        .flat_map(|u| (u + 1..n as Vertex).map(move |w| (u, w)))
        .collect();
    (0u64..1 << pairs.len())
        .map(|mask| {
            let edges = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e);
            Graph::from_edges(0..n as Vertex, edges).unwrap()
        })
        .collect()
}

fn adjacency(g: &Graph) -> (Vec<Vertex>, Vec<Vec<bool>>) {
    let vs = g.vertices().unwrap().to_vec();
    let m = vs.iter().map(|&u| vs.iter().map(|&w| g.adjacent(u, w)).collect()).collect();
    (vs, m)
}

/// Shortest circuit by enumerating simple cycles through their least vertex.
pub fn girth_oracle(g: &Graph) -> Option<usize> {
    let (vs, adj) = adjacency(g);
    let n = vs.len();
    let mut best: Option<usize> = None;
    fn extend(adj: &[Vec<bool>], start: usize, path: &mut Vec<usize>, best: &mut Option<usize>) {
        let last = *path.last().unwrap();
        for next in start..adj.len() {
            if !adj[last][next] {
                continue;
            }
            if next == start && path.len() >= 3 {
                *best = Some(best.map_or(path.len(), |b| b.min(path.len())));
            } else if next > start && !path.contains(&next) {
                path.push(next);
                extend(adj, start, path, best);
                path.pop();
            }
        }
    }
    for s in 0..n {
        extend(&adj, s, &mut vec![s], &mut best);
    }
    best
}

/// `Lk(v) ⊄ St(w)` for all `v ≠ w`, straight from the definition.
pub fn untransvectable_oracle(g: &Graph) -> bool {
    let (vs, adj) = adjacency(g);
    let n = vs.len();
    (0..n).all(|v| {
        (0..n).filter(|&w| w != v).all(|w| {
            let link_in_star = (0..n).filter(|&x| adj[v][x]).all(|x| x == w || adj[w][x]);
            !link_in_star
        })
    })
}

/// `Lk(Lk v) = {v}` for all `v`, where `Lk` of a set is the common link.
pub fn rigid_oracle(g: &Graph) -> bool {
    let (vs, adj) = adjacency(g);
    let n = vs.len();
    (0..n).all(|v| {
        let link: Vec<usize> = (0..n).filter(|&x| adj[v][x]).collect();
        if link.is_empty() {
            return false;
        }
        let common: Vec<usize> = (0..n).filter(|&y| link.iter().all(|&x| adj[x][y])).collect();
        common == vec![v]
    })
}

pub fn residue(k: u64) -> GroupElement {
    GroupElement::Residue(k)
}
