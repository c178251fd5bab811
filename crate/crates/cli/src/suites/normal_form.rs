use gwkit_core::group::Group;
use gwkit_core::{Graph, GraphProduct, Syllable};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{stream_id, Suite, SuiteContext, SuiteError};
use crate::oracle;
use crate::runner::{run_indexed, Outcome, Tally};
use crate::sample;

const WORD_LENGTH: usize = 6;
const SAMPLED_FIVE_VERTEX_GRAPHS: usize = 64;

/// `normalize` against the rewrite-closure oracle.
pub struct NormalForm;

fn builtin_products(seed: u64) -> Vec<GraphProduct> {
    let mut graphs: Vec<Graph> = (1..=4).flat_map(oracle::all_graphs).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ stream_id("normal-form/graphs"));
    graphs.extend((0..SAMPLED_FIVE_VERTEX_GRAPHS).map(|_| sample::random_graph(&mut rng, 5, 0.5)));
    let groups = [
        Group::cyclic(2).expect("Z/2"),
        Group::cyclic(3).expect("Z/3"),
        Group::integers(),
    ];
    graphs
        .iter()
        .flat_map(|g| groups.iter().map(move |h| GraphProduct::uniform(g.clone(), h.clone())))
        .collect()
}

fn check(gp: &GraphProduct, word: &[Syllable]) -> Outcome {
    let describe = || {
        format!(
            "graph {:?}, word {:?}",
            gp.graph().edges().unwrap_or_default(),
            word.iter().map(ToString::to_string).collect::<Vec<_>>()
        )
    };
    let got = match gp.normalize(word) {
        Ok(g) => g,
        Err(e) => return Outcome::Fail(format!("{}: {e}", describe())),
    };
    let expected = oracle::canonical_form(gp, word);
    let support: std::collections::BTreeSet<_> = expected.iter().map(|s| s.vertex).collect();
    Outcome::check(
        got.syllables() == expected.as_slice()
            && got.syllable_length() == expected.len()
            && got.support() == support,
        || format!("{}: normalize gave {}, oracle {:?}", describe(), gp.format(&got), expected),
    )
}

impl Suite for NormalForm {
    fn name(&self) -> &'static str {
        "normal-form"
    }

    fn statement(&self) -> &'static str {
        "normalize returns the lexicographically least shortest rewrite of its input, with matching syllable length and support"
    }

    fn run(&self, ctx: &SuiteContext) -> Result<Tally, SuiteError> {
        let (products, per_product) = match ctx.config.filter(|c| c.graph.is_some()) {
            Some(cfg) => (vec![cfg.product()?], ctx.samples_or(2000)),
            None => (builtin_products(ctx.seed), ctx.samples_or(16)),
        };
        for gp in &products {
            if !gp.graph().is_finite() {
                return Err(super::setup(self.name(), "needs a finite graph"));
            }
        }
        let pools: Vec<Vec<i64>> = products
            .iter()
            .map(|gp| gp.graph().vertices().expect("finite").to_vec())
            .collect();
        Ok(run_indexed(
            ctx.seed,
            stream_id(self.name()),
            products.len() * per_product,
            |i, rng| {
                let k = i / per_product;
                let word = sample::word(rng, &products[k], &pools[k], WORD_LENGTH, 3);
                check(&products[k], &word)
            },
        ))
    }
}
