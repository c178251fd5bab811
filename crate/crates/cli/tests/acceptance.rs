//! Acceptance criteria, one line per criterion. Runs without the libtest
//! harness so the lines are always printed.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use gwkit::report::SuiteReport;
use gwkit::runner::{run_indexed, Outcome};
use gwkit::suites::{registry, run_suite, SuiteContext};
use rand::Rng;

const SEED: u64 = 1;

struct Criterion {
    id: u32,
    title: &'static str,
    passed: bool,
    detail: String,
}

fn run(name: &str, ctx: &SuiteContext) -> Result<SuiteReport, String> {
    let suite = registry().lookup(name).map_err(|e| e.to_string())?;
    run_suite(suite, ctx).map_err(|e| e.to_string())
}

fn describe(r: &SuiteReport) -> String {
    let mut s = format!(
        "{}: {} pass / {} fail / {} inconclusive of {} in {} ms",
        r.suite, r.pass, r.fail, r.inconclusive, r.total, r.wall_ms
    );
    if let Some(c) = &r.counterexample {
        s.push_str(&format!("; counterexample: {c}"));
    }
    s
}

/// A suite criterion: zero violations and inconclusives, at least
/// `min_total` instances, within `limit`.
fn suite_criterion(
    id: u32,
    title: &'static str,
    names: &[&str],
    ctx: &SuiteContext,
    min_total: usize,
    limit: Option<Duration>,
    reports: &mut Vec<SuiteReport>,
) -> Criterion {
    let start = Instant::now();
    let mut passed = true;
    let mut details = Vec::new();
    for name in names {
        match run(name, ctx) {
            Ok(r) => {
                passed &= r.fail == 0 && r.inconclusive == 0 && r.total >= min_total;
                details.push(describe(&r));
                reports.push(r);
            }
            Err(e) => {
                passed = false;
                details.push(format!("{name}: {e}"));
            }
        }
    }
    let elapsed = start.elapsed();
    if let Some(limit) = limit {
        if elapsed > limit {
            passed = false;
            details.push(format!("took {elapsed:?}, limit {limit:?}"));
        }
    }
    Criterion {
        id,
        title,
        passed,
        detail: details.join("; "),
    }
}

/// Reruns every suite and compares tallies and first counterexamples, then
/// checks that a run with violations reports the same first counterexample
/// whatever the thread count.
fn determinism(ctx: &SuiteContext, first: &[SuiteReport]) -> Criterion {
    let mut mismatches = Vec::new();
    let mut first = first.to_vec();
    for name in registry().names() {
        if !first.iter().any(|r| r.suite == name) {
            match run(name, ctx) {
                Ok(r) => first.push(r),
                Err(e) => mismatches.push(format!("{name}: {e}")),
            }
        }
    }
    for r in &first {
        match run(&r.suite, ctx) {
            Ok(again) if again.deterministic_part() == r.deterministic_part() => {}
            Ok(again) => mismatches.push(format!("{}: {:?} vs {:?}", r.suite, r, again)),
            Err(e) => mismatches.push(format!("{}: {e}", r.suite)),
        }
    }
    let planted = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("thread pool");
        pool.install(|| {
            run_indexed(SEED, 7, 20_000, |i, rng| {
                let x: f64 = rng.gen();
                Outcome::check(x >= 0.001, || format!("instance {i} drew {x}"))
            })
        })
    };
    let (one, many) = (planted(1), planted(8));
    if one != many || one.counterexample.is_none() {
        mismatches.push(format!("planted violations: {one:?} vs {many:?}"));
    }
    Criterion {
        id: 8,
        title: "reruns with the same seed give identical tallies and first counterexamples",
        passed: mismatches.is_empty(),
        detail: if mismatches.is_empty() {
            format!(
                "{} suites rerun identically; planted run fails {} of {} with the same first counterexample on 1 and 8 threads",
                first.len(),
                one.fail,
                one.total
            )
        } else {
            mismatches.join("; ")
        },
    }
}

fn main() -> ExitCode {
    let ctx = SuiteContext::builtin(SEED);
    let mut reports = Vec::new();
    let mut criteria = vec![
        suite_criterion(
            1,
            "normal forms agree with the rewrite oracle on graphs with at most 5 vertices",
            &["normal-form"],
            &ctx,
            1,
            Some(Duration::from_secs(60)),
            &mut reports,
        ),
        suite_criterion(
            2,
            "syllable length moves by at most one through one of three shapes",
            &["syllable-length-step"],
            &ctx,
            4 * 10_000,
            None,
            &mut reports,
        ),
        suite_criterion(
            3,
            "length functions are subadditive with finite sublevel sets",
            &["length-functions"],
            &ctx,
            1,
            None,
            &mut reports,
        ),
        suite_criterion(
            4,
            "m-map perturbation bounds, A-membership and the support bound",
            &["mmap-estimates"],
            &ctx,
            4 * 10_000,
            None,
            &mut reports,
        ),
        suite_criterion(
            5,
            "commutator case formulas, crossed coefficients and translate covers",
            &["commutator-cases", "crossed-commutator-cases"],
            &ctx,
            1,
            Some(Duration::from_secs(300)),
            &mut reports,
        ),
        suite_criterion(
            6,
            "quotient graphs, multiplicities and the vertex-count obstruction",
            &["quotient"],
            &ctx,
            50,
            None,
            &mut reports,
        ),
        suite_criterion(
            7,
            "hypothesis truth tables and graph predicates match brute force",
            &["hypotheses"],
            &ctx,
            1,
            None,
            &mut reports,
        ),
    ];
    criteria.push(determinism(&ctx, &reports));
    for c in &criteria {
        println!(
            "criterion {}: {} - {} [{}]",
            c.id,
            if c.passed { "PASS" } else { "FAIL" },
            c.title,
            c.detail
        );
    }
    let failed = criteria.iter().filter(|c| !c.passed).count();
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
