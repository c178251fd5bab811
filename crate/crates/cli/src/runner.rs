//! Deterministic parallel evaluation of indexed instances.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

/// Result of checking one instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(String),
    Inconclusive(String),
}

impl Outcome {
    pub fn check(ok: bool, counterexample: impl FnOnce() -> String) -> Self {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail(counterexample())
        }
    }
}

/// Counts over a batch of instances with the first failure by index.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
    pub counterexample: Option<String>,
    pub first_inconclusive: Option<String>,
}

impl Tally {
    pub fn record(&mut self, outcome: Outcome) {
        self.total += 1;
        match outcome {
            Outcome::Pass => self.pass += 1,
            Outcome::Fail(c) => {
                self.fail += 1;
                self.counterexample.get_or_insert(c);
            }
            Outcome::Inconclusive(why) => {
                self.inconclusive += 1;
                self.first_inconclusive.get_or_insert(why);
            }
        }
    }

    /// Appends a later batch; earlier counterexamples take precedence.
    pub fn merge(&mut self, other: Tally) {
        self.total += other.total;
        self.pass += other.pass;
        self.fail += other.fail;
        self.inconclusive += other.inconclusive;
        if self.counterexample.is_none() {
            self.counterexample = other.counterexample;
        }
        if self.first_inconclusive.is_none() {
            self.first_inconclusive = other.first_inconclusive;
        }
    }

    /// Prefixes the counterexample with a label naming the batch.
    pub fn labelled(mut self, label: &str) -> Self {
        if let Some(c) = &mut self.counterexample {
            *c = format!("[{label}] {c}");
        }
        if let Some(c) = &mut self.first_inconclusive {
            *c = format!("[{label}] {c}");
        }
        self
    }
}

/// The RNG of instance `index` in stream `stream`: one ChaCha stream per
/// (stream, index) pair under the run seed.
pub fn instance_rng(seed: u64, stream: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    rng.set_stream(index as u64);
    rng
}

/// Evaluates `check` on instances `0..n` in parallel. Results are folded in
/// index order, so the tally does not depend on scheduling.
pub fn run_indexed<F>(seed: u64, stream: u64, n: usize, check: F) -> Tally
where
    F: Fn(usize, &mut ChaCha8Rng) -> Outcome + Sync,
{
    let outcomes: Vec<Outcome> = (0..n)
        .into_par_iter()
        .map(|i| check(i, &mut instance_rng(seed, stream, i)))
        .collect();
    let mut tally = Tally::default();
    for o in outcomes {
        tally.record(o);
    }
    tally
}

/// Evaluates `check` on every item in parallel, folding in item order.
pub fn run_items<T, F>(items: &[T], check: F) -> Tally
where
    T: Sync,
    F: Fn(&T) -> Outcome + Sync,
{
    let outcomes: Vec<Outcome> = items.par_iter().map(&check).collect();
    let mut tally = Tally::default();
    for o in outcomes {
        tally.record(o);
    }
    tally
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn tallies_do_not_depend_on_scheduling() {
        let check = |i: usize, rng: &mut ChaCha8Rng| {
            let x: u32 = rng.gen_range(0..100);
            Outcome::check(!x.is_multiple_of(7), || format!("instance {i} drew {x}"))
        };
        let a = run_indexed(5, 1, 500, check);
        let b = run_indexed(5, 1, 500, check);
        assert_eq!(a, b);
        assert_eq!(a.pass + a.fail + a.inconclusive, a.total);
        assert_eq!(a.counterexample.is_some(), a.fail > 0);
    }

    #[test]
    fn streams_differ() {
        let mut a = instance_rng(1, 0, 0);
        let mut b = instance_rng(1, 1, 0);
        let mut c = instance_rng(1, 0, 1);
        let (x, y, z): (u64, u64, u64) = (a.gen(), b.gen(), c.gen());
        assert!(x != y && x != z);
    }
}
