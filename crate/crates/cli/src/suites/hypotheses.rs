use std::collections::BTreeSet;

use gwkit_core::action::{GraphAction, HypothesisReport};
use gwkit_core::graph::{Girth, GraphError};
use gwkit_core::group::Group;
use gwkit_core::Graph;

use super::fixtures::{dihedral, half_turn, path_flip};
use super::{Suite, SuiteContext, SuiteError};
use crate::oracle;
use crate::runner::{run_items, Outcome, Tally};

const GRAPH_ORDER: usize = 6;
const SEARCH_RADIUS: u64 = 4;

/// Action hypotheses and graph predicates against brute force.
pub struct Hypotheses;

/// Expected `(free, finite isotropy, orbit count, star-fixing is trivial)`.
type Table = (bool, bool, usize, bool);

fn report(action: &GraphAction) -> Result<HypothesisReport, String> {
    action.hypothesis_report(SEARCH_RADIUS).map_err(|e| e.to_string())
}

fn matches_table(action: &GraphAction, expected: Table) -> Outcome {
    let label = action.spec().to_string();
    match report(action) {
        Ok(r) => {
            let got = (
                r.free.holds(),
                r.finite_isotropy.holds(),
                r.orbit_count,
                r.fixes_star_implies_trivial.holds(),
            );
            Outcome::check(got == expected, || format!("{label}: report {got:?}, expected {expected:?}"))
        }
        Err(e) => Outcome::Fail(format!("{label}: {e}")),
    }
}

/// The hypotheses of a finite action by enumerating the group.
fn enumerated_table(action: &GraphAction) -> Option<Table> {
    let elements = action.group().elements()?;
    let graph = action.graph();
    let vertices = graph.vertices()?;
    let group = action.group();
    let moves = |g, v| action.act(g, v).ok() != Some(v);
    let nontrivial: Vec<_> = elements.iter().filter(|g| !group.is_identity(g)).collect();
    let free = nontrivial.iter().all(|g| vertices.iter().all(|&v| moves(g, v)));
    let star_fixing_trivial = vertices.iter().all(|&v| {
        let star = graph.star(v).expect("graph vertex");
        nontrivial.iter().all(|g| star.iter().any(|&u| moves(g, u)))
    });
    let orbits: BTreeSet<_> = vertices
        .iter()
        .map(|&v| elements.iter().map(|g| action.act(g, v).expect("validated")).min())
        .collect();
    Some((free, true, orbits.len(), star_fixing_trivial))
}

fn matches_enumeration(action: &GraphAction) -> Outcome {
    match enumerated_table(action) {
        Some(expected) => matches_table(action, expected),
        None => match report(action) {
            Ok(r) => Outcome::check(!r.free.fails() || r.free.witness().is_some(), || {
                format!("{}: failing verdict without a witness", action.spec())
            }),
            Err(e) => Outcome::Fail(e),
        },
    }
}

fn predicates(graph: &Graph) -> Outcome {
    let edges = || graph.edges().unwrap_or_default();
    let girth = match graph.girth() {
        Ok(Girth::Finite(n)) => Some(n),
        Ok(Girth::Infinite) => None,
        Err(e) => return Outcome::Fail(e.to_string()),
    };
    if girth != oracle::girth(graph) {
        return Outcome::Fail(format!("{:?}: girth {girth:?}, oracle {:?}", edges(), oracle::girth(graph)));
    }
    let untransvectable = graph.is_untransvectable().map(|v| v.holds());
    if untransvectable.as_ref().ok() != Some(&oracle::untransvectable(graph)) {
        return Outcome::Fail(format!("{:?}: untransvectable {untransvectable:?}", edges()));
    }
    let rigid = match graph.is_rigid() {
        Ok(v) => Some(v.holds()),
        Err(GraphError::IsolatedVertex(_)) => None,
        Err(e) => return Outcome::Fail(e.to_string()),
    };
    Outcome::check(rigid == oracle::rigid(graph), || {
        format!("{:?}: rigid {rigid:?}, oracle {:?}", edges(), oracle::rigid(graph))
    })
}

impl Suite for Hypotheses {
    fn name(&self) -> &'static str {
        "hypotheses"
    }

    fn statement(&self) -> &'static str {
        "freeness, finite isotropy, orbit counts and the star-fixing condition match brute force, as do girth, untransvectability and rigidity"
    }

    fn run(&self, ctx: &SuiteContext) -> Result<Tally, SuiteError> {
        if let Some(cfg) = ctx.config.filter(|c| c.action.is_some()) {
            return Ok(run_items(&[cfg.action()?.clone()], matches_enumeration));
        }
        let mut tally = Tally::default();
        let c5 = Graph::cycle(5).expect("C5");
        tally.record(matches_table(&GraphAction::rotation(5, 5, 1).expect("rotation"), (true, true, 1, true)));
        tally.record(matches_table(&dihedral(4), (false, true, 1, true)));
        tally.record(matches_table(&GraphAction::trivial(c5.clone()).expect("trivial"), (true, true, 5, true)));
        tally.record(matches_table(&GraphAction::shift(), (true, true, 1, true)));
        tally.record(matches_table(&half_turn(), (true, true, 2, true)));
        let integers_on_cycle = GraphAction::permutation(Group::integers(), c5, vec![vec![1, 2, 3, 4, 0]]);
        tally.record(match integers_on_cycle.as_ref().map(report) {
            Ok(Ok(r)) => Outcome::check(r.finite_isotropy.fails(), || {
                format!("Z rotating C5: finite isotropy {:?}", r.finite_isotropy)
            }),
            Ok(Err(e)) => Outcome::Fail(e),
            Err(e) => Outcome::Fail(format!("Z rotating C5 rejected: {e}")),
        });
        let mut finite = vec![path_flip(4), path_flip(5), dihedral(3), dihedral(5), dihedral(6)];
        finite.extend((3..=6).map(|n| GraphAction::rotation(n, n as u64, 1).expect("rotation")));
        tally.merge(run_items(&finite, matches_enumeration));
        let graphs: Vec<Graph> = (1..=GRAPH_ORDER).flat_map(oracle::all_graphs).collect();
        tally.merge(run_items(&graphs, predicates));
        Ok(tally)
    }
}

