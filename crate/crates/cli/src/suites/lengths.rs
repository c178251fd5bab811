use gwkit_core::action::GraphAction;
use gwkit_core::group::Group;
use gwkit_core::lengths::LengthSystem;
use gwkit_core::{Vertex, WreathProduct};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::fixtures::{dihedral, path_flip};
use super::{setup, stream_id, Suite, SuiteContext, SuiteError};
use crate::runner::{run_indexed, run_items, Outcome, Tally};
use crate::sample;

/// Subadditivity, the vertex bound and finite sublevel sets of the three
/// length functions.
pub struct LengthFunctions;

fn builtin_actions() -> Vec<GraphAction> {
    let mut out = vec![GraphAction::shift(), GraphAction::left_multiplication(2).expect("free action")];
    out.extend((3..=7).map(|n| GraphAction::rotation(n, n as u64, 1).expect("rotation")));
    out
}

fn random_action(rng: &mut ChaCha8Rng) -> GraphAction {
    match rng.gen_range(0..4) {
        0 => {
            let n = rng.gen_range(2..=7);
            GraphAction::trivial(sample::random_graph(rng, n, 0.5)).expect("trivial action")
        }
        1 => {
            let n = rng.gen_range(3..=8);
            let step = rng.gen_range(1..n);
            GraphAction::rotation(n, n as u64, step).expect("rotation")
        }
        2 => dihedral(rng.gen_range(3..=6)),
        _ => path_flip(rng.gen_range(2..=7)),
    }
}

fn h_group(rng: &mut ChaCha8Rng) -> Group {
    match rng.gen_range(0..3) {
        0 => Group::integers(),
        1 => Group::cyclic(rng.gen_range(2..=4)).expect("cyclic"),
        _ => Group::free(2).expect("F2"),
    }
}

/// `|v|_Γ` straight from its definition: the least `|g|` with `g·r = v`
/// over representatives `r`, searching the group ball of `radius`.
fn definition_length(system: &LengthSystem, v: Vertex, radius: u64) -> Option<u64> {
    let action = system.wreath().action();
    let candidates = match action.group().elements() {
        Some(all) => all,
        None => action.group().ball(radius).into_iter().collect(),
    };
    candidates
        .iter()
        .filter(|g| system.representatives().iter().any(|&r| action.act(g, r).ok() == Some(v)))
        .map(|g| system.group_length(g))
        .min()
}

fn check(wreath: WreathProduct, radius: u64, budget: usize) -> Outcome {
    let system = match LengthSystem::with_budget(wreath, budget) {
        Ok(s) => s,
        Err(e) => return Outcome::Fail(format!("length system rejected: {e}")),
    };
    let describe = || system.wreath().action().spec().to_string();
    let report = match system.verify_properties(radius) {
        Ok(r) => r,
        Err(e) => return Outcome::Inconclusive(format!("{}: {e}", describe())),
    };
    if !report.holds() {
        return Outcome::Fail(format!("{}: {}", describe(), report.first_failure().cloned().unwrap_or_default()));
    }
    let monotone = report
        .sublevel_sizes
        .windows(2)
        .all(|w| w[0].1 <= w[1].1 && w[0].2 <= w[1].2 && w[0].3 <= w[1].3);
    if !monotone {
        return Outcome::Fail(format!("{}: sublevel sizes {:?}", describe(), report.sublevel_sizes));
    }
    let graph = system.wreath().action().graph();
    for v in sample::vertex_pool(graph, 3, budget) {
        let got = match system.vertex_length(v) {
            Ok(l) => l,
            Err(e) => return Outcome::Inconclusive(format!("{}: {e}", describe())),
        };
        let expected = definition_length(&system, v, radius);
        let agrees = match expected {
            Some(d) => got == d,
            None => got > radius,
        };
        if !agrees {
            return Outcome::Fail(format!("{}: |{v}| = {got}, definition gives {expected:?}", describe()));
        }
    }
    Outcome::Pass
}

impl Suite for LengthFunctions {
    fn name(&self) -> &'static str {
        "length-functions"
    }

    fn statement(&self) -> &'static str {
        "word lengths on G and H and the orbit length on vertices are subadditive, satisfy |g v| <= |g| + |v| and have finite sublevel sets"
    }

    fn run(&self, ctx: &SuiteContext) -> Result<Tally, SuiteError> {
        let radius = ctx.radius_or(6) as u64;
        let budget = ctx.budget;
        if let Some(cfg) = ctx.config.filter(|c| c.action.is_some()) {
            let wreath = cfg.wreath()?;
            LengthSystem::with_budget(wreath.clone(), budget).map_err(|e| setup(self.name(), e))?;
            return Ok(run_items(&[wreath], |w| check(w.clone(), radius, budget)));
        }
        let fixed: Vec<WreathProduct> = builtin_actions()
            .into_iter()
            .map(|a| WreathProduct::new(a, Group::cyclic(2).expect("Z/2")))
            .collect();
        let mut tally = run_items(&fixed, |w| check(w.clone(), radius, budget));
        let random = run_indexed(ctx.seed, stream_id(self.name()), ctx.samples_or(40), |_, rng| {
            let action = random_action(rng);
            let h = h_group(rng);
            check(WreathProduct::new(action, h), radius, budget)
        });
        tally.merge(random);
        Ok(tally)
    }
}
