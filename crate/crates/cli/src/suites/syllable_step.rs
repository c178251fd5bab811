use gwkit_core::group::Group;
use gwkit_core::product::LeftProduct;
use gwkit_core::{GpElement, Graph, GraphProduct, Syllable, Vertex};
use rand::seq::SliceRandom;

use super::{stream_id, Suite, SuiteContext, SuiteError};
use crate::runner::{run_indexed, Outcome, Tally};
use crate::sample;

/// Left multiplication by one syllable moves the syllable length by at most
/// one, through exactly one of three shapes.
pub struct SyllableStep;

fn builtin_products() -> Vec<GraphProduct> {
    let z2 = Group::cyclic(2).expect("Z/2");
    vec![
        GraphProduct::uniform(Graph::cycle(5).expect("C5"), Group::integers()),
        GraphProduct::uniform(Graph::path(4).expect("P4"), Group::cyclic(3).expect("Z/3")),
        GraphProduct::uniform(Graph::complete(4).expect("K4"), z2.clone()),
        GraphProduct::uniform(Graph::from_edges(0..3, []).expect("empty graph"), z2),
        GraphProduct::uniform(Graph::cycle(4).expect("C4"), Group::free(2).expect("F2")),
    ]
}

/// Index of a `v`-syllable all of whose predecessors commute with `v`.
fn front_movable(gp: &GraphProduct, h: &GpElement, v: Vertex) -> Option<usize> {
    let s = h.syllables();
    (0..s.len()).find(|&j| s[j].vertex == v && s[..j].iter().all(|t| gp.graph().adjacent(t.vertex, v)))
}

/// `seq` is a normal form of `target`.
fn is_normal_form_of(gp: &GraphProduct, seq: &[Syllable], target: &GpElement) -> bool {
    let vertices: Vec<Vertex> = seq.iter().map(|s| s.vertex).collect();
    let nontrivial = seq
        .iter()
        .all(|s| gp.vertex_group(s.vertex).is_ok_and(|g| !g.is_identity(&s.elem)));
    nontrivial && gp.is_irreducible(&vertices) && gp.normalize(seq).is_ok_and(|n| &n == target)
}

fn check(gp: &GraphProduct, x: &Syllable, h: &GpElement) -> Outcome {
    let group = gp.vertex_group(x.vertex).expect("sampled vertex");
    let xh = match gp.normalize(std::slice::from_ref(x)).and_then(|xe| gp.multiply(&xe, h)) {
        Ok(p) => p,
        Err(e) => return Outcome::Fail(e.to_string()),
    };
    let (n, m) = (h.syllable_length(), xh.syllable_length());
    let describe = || format!("x = {x}, h = {}, xh = {}", gp.format(h), gp.format(&xh));
    if m + 1 < n || m > n + 1 {
        return Outcome::Fail(format!("{}: length {n} became {m}", describe()));
    }
    let shape = match gp.classify_left_product(x, h) {
        Ok(s) => s,
        Err(e) => return Outcome::Fail(e.to_string()),
    };
    let front = front_movable(gp, h, x.vertex);
    let ok = match (shape, front) {
        (LeftProduct::Extend, None) => {
            let mut seq = vec![x.clone()];
            seq.extend(h.syllables().iter().cloned());
            m == n + 1 && is_normal_form_of(gp, &seq, &xh)
        }
        (LeftProduct::Merge(i), Some(j)) if i == j => {
            let merged = group.product(&x.elem, &h.syllables()[i].elem).expect("same group");
            let mut seq: Vec<Syllable> = h.syllables().to_vec();
            seq.remove(i);
            seq.insert(0, Syllable::new(x.vertex, merged));
            m == n && is_normal_form_of(gp, &seq, &xh)
        }
        (LeftProduct::Cancel(i), Some(j)) if i == j => {
            let mut seq: Vec<Syllable> = h.syllables().to_vec();
            seq.remove(i);
            m + 1 == n && (seq.is_empty() && xh.is_identity() || is_normal_form_of(gp, &seq, &xh))
        }
        _ => false,
    };
    Outcome::check(ok, || format!("{}: shape {shape:?}, front-movable syllable {front:?}", describe()))
}

impl Suite for SyllableStep {
    fn name(&self) -> &'static str {
        "syllable-length-step"
    }

    fn statement(&self) -> &'static str {
        "for a syllable x, |h| - 1 <= |xh| <= |h| + 1, with xh extending, merging into or cancelling the front-movable syllable of h"
    }

    fn run(&self, ctx: &SuiteContext) -> Result<Tally, SuiteError> {
        let products = match ctx.config.filter(|c| c.graph.is_some()) {
            Some(cfg) => vec![cfg.product()?],
            None => builtin_products(),
        };
        let per = ctx.samples_or(10_000);
        let pools: Vec<Vec<Vertex>> = products
            .iter()
            .map(|gp| sample::vertex_pool(gp.graph(), 3, ctx.budget))
            .collect();
        Ok(run_indexed(ctx.seed, stream_id(self.name()), products.len() * per, |i, rng| {
            let k = i / per;
            let (gp, pool) = (&products[k], &pools[k]);
            let v = *pool.choose(rng).expect("nonempty pool");
            let group = gp.vertex_group(v).expect("pool vertex");
            let Some(a) = sample::nontrivial_element(rng, group, 3) else {
                return Outcome::Pass;
            };
            let h = sample::gp_element(rng, gp, pool, 8, 3);
            check(gp, &Syllable::new(v, a), &h)
        }))
    }
}
