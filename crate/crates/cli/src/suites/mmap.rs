use std::collections::BTreeSet;

use gwkit_core::group::GroupElement;
use gwkit_core::lengths::{LengthSystem, SparseVertexVector};
use gwkit_core::{Syllable, Vertex};
use rand::seq::SliceRandom;
use rand_chacha::ChaCha8Rng;

use super::fixtures::{length_systems, pool};
use super::{stream_id, Suite, SuiteContext, SuiteError};
use crate::oracle;
use crate::runner::{run_indexed, Outcome, Tally};
use crate::sample;

const MAX_C: u64 = 6;

/// Perturbation bounds, A-membership and the support bound for the m-map.
pub struct MmapEstimates;

/// `m` recomputed from one syllable sequence of `z.h`.
fn m_from_sequence(l: &LengthSystem, seq: &[Syllable], g: &GroupElement) -> Result<SparseVertexVector, String> {
    let action = l.wreath().action();
    let g_inv = action.group().inverse(g).map_err(|e| e.to_string())?;
    let support: BTreeSet<Vertex> = seq.iter().map(|s| s.vertex).collect();
    let mut m = SparseVertexVector::new();
    for v in support {
        let a = l.vertex_length(v).map_err(|e| e.to_string())?;
        let moved = action.act(&g_inv, v).map_err(|e| e.to_string())?;
        let b = l.vertex_length(moved).map_err(|e| e.to_string())?;
        m.add(v, a.min(b));
    }
    for s in seq {
        m.add(s.vertex, l.h_length(&s.elem));
    }
    Ok(m)
}

/// `supp ≤ 4|B(Γ, r)|`, growing the ball only as far as needed.
fn ball_bound(l: &LengthSystem, supp: usize, r: u64) -> Result<bool, String> {
    for k in 0..=r {
        if supp <= 4 * l.graph_ball(k).map_err(|e| e.to_string())?.len() {
            return Ok(true);
        }
    }
    Ok(false)
}

fn check(l: &LengthSystem, pool: &[Vertex], rng: &mut ChaCha8Rng) -> Result<Outcome, String> {
    let w = l.wreath();
    let z = sample::wreath_element(rng, w, pool, 6, 3);
    let k = sample::element(rng, w.acting_group(), 4);
    let v = *pool.choose(rng).expect("nonempty pool");
    let describe = || format!("z = {}", w.format(&z));
    let err = |e: &dyn std::fmt::Display| e.to_string();
    let mz = l.m_map(&z).map_err(|e| err(&e))?;

    for seq in oracle::normal_forms(w.product(), z.h.syllables()) {
        if m_from_sequence(l, &seq, &z.g)? != mz {
            return Ok(Outcome::Fail(format!("{}: m depends on the normal form {seq:?}", describe())));
        }
    }

    if let Some(x) = sample::nontrivial_element(rng, w.vertex_group(), 3) {
        let one = w.from_h(w.product().syllable(v, x.clone()).map_err(|e| err(&e))?);
        let bound = l.syllable_f_length(v, &x).map_err(|e| err(&e))?;
        let left = l.m_map(&w.multiply(&one, &z).map_err(|e| err(&e))?).map_err(|e| err(&e))?;
        let right = l.m_map(&w.multiply(&z, &one).map_err(|e| err(&e))?).map_err(|e| err(&e))?;
        if left.l1_distance(&mz) > bound || right.l1_distance(&mz) > bound {
            return Ok(Outcome::Fail(format!(
                "{}: syllable {v}:{} moves m by more than {bound}",
                describe(),
                w.vertex_group().format(&x)
            )));
        }
    }

    let ke = w.from_g(k.clone());
    let bound = l.group_length(&k) * LengthSystem::support_size(&z) as u64;
    let action = w.action();
    let pushed = mz.pushforward(|u| action.act(&k, u).expect("validated action"));
    let left = l.m_map(&w.multiply(&ke, &z).map_err(|e| err(&e))?).map_err(|e| err(&e))?;
    let right = l.m_map(&w.multiply(&z, &ke).map_err(|e| err(&e))?).map_err(|e| err(&e))?;
    if left.l1_distance(&pushed) > bound || right.l1_distance(&mz) > bound {
        return Ok(Outcome::Fail(format!(
            "{}: group element {} moves m by more than {bound}",
            describe(),
            w.acting_group().format(&k)
        )));
    }

    let f = l.f_length(&z).map_err(|e| err(&e))?;
    let supp = LengthSystem::support_size(&z);
    for c in 1..=MAX_C {
        if f <= c {
            let e = w.vertex_group().ball(c);
            let ball = l.graph_ball(c).map_err(|e| err(&e))?;
            if !l.in_a(&e, &ball, c as usize, &z).map_err(|e| err(&e))? {
                return Ok(Outcome::Fail(format!("{}: |z|_f = {f} <= {c} but z is outside A", describe())));
            }
        }
        if f <= c * supp as u64 && !ball_bound(l, supp, 2 * c)? {
            return Ok(Outcome::Fail(format!(
                "{}: |z|_f = {f} <= {c}|supp| but |supp| = {supp} exceeds 4|B(2C)|",
                describe()
            )));
        }
    }
    Ok(Outcome::Pass)
}

impl Suite for MmapEstimates {
    fn name(&self) -> &'static str {
        "mmap-estimates"
    }

    fn statement(&self) -> &'static str {
        "m is independent of the normal form, moves by at most |x|_f under a syllable and by |k||supp| under (e, k), and small |z|_f forces membership in A and a bounded support"
    }

    fn run(&self, ctx: &SuiteContext) -> Result<Tally, SuiteError> {
        let systems = length_systems(self.name(), ctx)?;
        let pools: Vec<Vec<Vertex>> = systems.iter().map(|l| pool(l, ctx.budget)).collect();
        let per = ctx.samples_or(10_000);
        Ok(run_indexed(ctx.seed, stream_id(self.name()), systems.len() * per, |i, rng| {
            let k = i / per;
            check(&systems[k], &pools[k], rng).unwrap_or_else(Outcome::Inconclusive)
        }))
    }
}

