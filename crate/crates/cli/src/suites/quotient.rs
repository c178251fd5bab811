use gwkit_core::action::GraphAction;
use gwkit_core::graph::{multigraph_iso, IsoOutcome, Multigraph};
use gwkit_core::group::Group;
use rand::Rng;

use super::fixtures::{dihedral, half_turn};
use super::{stream_id, Suite, SuiteContext, SuiteError};
use crate::oracle;
use crate::runner::{run_indexed, run_items, Outcome, Tally};
use crate::sample;

/// Quotient graphs and their multiplicities.
pub struct Quotient;

fn compare(action: &GraphAction) -> Outcome {
    let label = action.spec().to_string();
    let got = match action.quotient_graph() {
        Ok(q) => q,
        Err(e) => return Outcome::Fail(format!("{label}: {e}")),
    };
    match oracle::quotient_by_enumeration(action) {
        Some(expected) => Outcome::check(got == expected, || {
            format!("{label}: quotient {:?}, enumeration gives {:?}", got.edges(), expected.edges())
        }),
        None => {
            let orbits = action.orbits().map(|o| o.count());
            Outcome::check(orbits.as_ref().is_ok_and(|&n| n == got.vertex_count()), || {
                format!("{label}: {} quotient vertices, orbits {orbits:?}", got.vertex_count())
            })
        }
    }
}

fn shape(action: &GraphAction, vertices: usize, edges: &[((i64, i64), usize)]) -> Outcome {
    let label = action.spec().to_string();
    match action.quotient_graph() {
        Ok(q) => Outcome::check(
            q.vertex_count() == vertices && q.edges().iter().map(|(&k, &m)| (k, m)).eq(edges.iter().copied()),
            || format!("{label}: quotient {:?} on {} vertices", q.edges(), q.vertex_count()),
        ),
        Err(e) => Outcome::Fail(format!("{label}: {e}")),
    }
}

fn trivial_quotient_is_isomorphic(graph: gwkit_core::Graph) -> Outcome {
    let q = match GraphAction::trivial(graph.clone()).and_then(|a| a.quotient_graph()) {
        Ok(q) => q,
        Err(e) => return Outcome::Fail(e.to_string()),
    };
    let original = Multigraph::from_graph(&graph).expect("finite graph");
    match multigraph_iso(&q, &original) {
        Ok(IsoOutcome::Isomorphic(_)) => Outcome::Pass,
        Ok(IsoOutcome::NotIsomorphic(reason)) => {
            Outcome::Fail(format!("trivial quotient of {:?}: {reason}", graph.edges().unwrap_or_default()))
        }
        Err(e) => Outcome::Inconclusive(e.to_string()),
    }
}

impl Suite for Quotient {
    fn name(&self) -> &'static str {
        "quotient"
    }

    fn statement(&self) -> &'static str {
        "the quotient has one vertex per orbit and one edge per edge orbit; the trivial action's quotient is the graph itself"
    }

    fn run(&self, ctx: &SuiteContext) -> Result<Tally, SuiteError> {
        if let Some(cfg) = ctx.config.filter(|c| c.action.is_some()) {
            return Ok(run_items(&[cfg.action()?.clone()], compare));
        }
        let mut tally = run_indexed(ctx.seed, stream_id(self.name()), ctx.samples_or(50), |_, rng| {
            let n = rng.gen_range(2..=8);
            trivial_quotient_is_isomorphic(sample::random_graph(rng, n, 0.4))
        });
        let rotation = GraphAction::rotation(4, 4, 1).expect("rotation");
        let half = half_turn();
        tally.record(shape(&rotation, 1, &[((0, 0), 1)]));
        tally.record(shape(&half, 2, &[((0, 1), 2)]));
        tally.record(match (rotation.quotient_graph(), half.quotient_graph()) {
            (Ok(a), Ok(b)) => match multigraph_iso(&a, &b) {
                Ok(IsoOutcome::NotIsomorphic(reason)) => Outcome::check(reason == "vertex counts 1 vs 2", || {
                    format!("rotation vs half-turn quotients: reason {reason:?}")
                }),
                other => Outcome::Fail(format!("rotation vs half-turn quotients: {other:?}")),
            },
            (a, b) => Outcome::Fail(format!("{a:?} / {b:?}")),
        });
        tally.record(shape(&GraphAction::shift(), 1, &[((0, 0), 1)]));
        tally.record(shape(
            &GraphAction::left_multiplication(2).expect("free action"),
            1,
            &[((0, 0), 2)],
        ));
        let step_two = GraphAction::permutation(
            Group::cyclic(3).expect("Z/3"),
            gwkit_core::Graph::cycle(6).expect("C6"),
            vec![(0..6).map(|v| (v + 2) % 6).collect()],
        )
        .expect("rotation by two");
        let enumerated = [
            rotation,
            half,
            dihedral(4),
            dihedral(5),
            GraphAction::rotation(5, 5, 1).expect("rotation"),
            step_two,
        ];
        tally.merge(run_items(&enumerated, compare));
        Ok(tally)
    }
}
