use std::collections::BTreeSet;

use gwkit_core::action::GraphAction;
use gwkit_core::group::GroupElement;
use gwkit_core::{Graph, Vertex};
use rand_chacha::ChaCha8Rng;

use super::fixtures::dihedral;
use super::{stream_id, Suite, SuiteContext, SuiteError};
use crate::runner::{run_indexed, Outcome, Tally};
use crate::sample;

/// `{g : S ∩ gS ≠ ∅}` is finite and listed exactly.
pub struct MixingSupport;

fn builtin_actions() -> Vec<GraphAction> {
    vec![
        GraphAction::rotation(5, 5, 1).expect("rotation"),
        dihedral(4),
        GraphAction::shift(),
        GraphAction::left_multiplication(2).expect("free action"),
        GraphAction::trivial(Graph::cycle(5).expect("C5")).expect("trivial action"),
    ]
}

fn check(action: &GraphAction, pool: &[Vertex], radius: u64, rng: &mut ChaCha8Rng) -> Outcome {
    let support = sample::vertex_subset(rng, pool, 4);
    let mixing = match action.mixing_elements(&support) {
        Ok(m) => m,
        Err(e) => return Outcome::Inconclusive(format!("support {support:?}: {e}")),
    };
    let search: BTreeSet<GroupElement> = match action.group().elements() {
        Some(all) => all.into_iter().collect(),
        None => action.group().ball(radius),
    };
    let group = action.group();
    for g in &search {
        let moved: BTreeSet<Vertex> = support.iter().map(|&v| action.act(g, v).expect("validated")).collect();
        if moved.is_disjoint(&support) == mixing.contains(g) {
            return Outcome::Fail(format!(
                "support {support:?}: {} {} the mixing set",
                group.format(g),
                if mixing.contains(g) { "wrongly lies in" } else { "is missing from" }
            ));
        }
    }
    for g in &mixing {
        let moved = action.act_set(g, &support);
        if moved.is_disjoint(&support) {
            return Outcome::Fail(format!("support {support:?}: {} does not mix it", group.format(g)));
        }
    }
    let stabilizer = support
        .iter()
        .map(|&v| action.transporter(v, v).map(|t| t.len()))
        .collect::<Option<Vec<_>>>();
    match stabilizer {
        Some(sizes) => {
            let bound = support.len() * support.len() * sizes.into_iter().max().unwrap_or(1);
            Outcome::check(mixing.len() <= bound, || {
                format!("support {support:?}: {} mixing elements exceed {bound}", mixing.len())
            })
        }
        None => Outcome::Inconclusive(format!("support {support:?}: stabilizer not listable")),
    }
}

impl Suite for MixingSupport {
    fn name(&self) -> &'static str {
        "mixing-support"
    }

    fn statement(&self) -> &'static str {
        "for finite S, the set of g with S and gS meeting is finite, of size at most |S|^2 max |Stab(v)|, and is computed exactly"
    }

    fn run(&self, ctx: &SuiteContext) -> Result<Tally, SuiteError> {
        let actions = match ctx.config.filter(|c| c.action.is_some()) {
            Some(cfg) => vec![cfg.action()?.clone()],
            None => builtin_actions(),
        };
        let pools: Vec<Vec<Vertex>> = actions
            .iter()
            .map(|a| sample::vertex_pool(a.graph(), 3, ctx.budget))
            .collect();
        let per = ctx.samples_or(500);
        let radius = ctx.radius_or(4) as u64;
        Ok(run_indexed(ctx.seed, stream_id(self.name()), actions.len() * per, |i, rng| {
            let k = i / per;
            check(&actions[k], &pools[k], radius, rng)
        }))
    }
}
