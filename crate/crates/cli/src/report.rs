use std::fmt::Write as _;

use serde::Serialize;

use crate::exit;
use crate::runner::Tally;

/// One suite's outcome. `wall_ms` is the only field that varies between
/// runs with the same config and seed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub statement: String,
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
    pub counterexample: Option<String>,
    pub first_inconclusive: Option<String>,
    pub seed: u64,
    pub wall_ms: u64,
}

impl SuiteReport {
    pub fn new(suite: &str, statement: &str, tally: Tally, seed: u64, wall_ms: u64) -> Self {
        Self {
            suite: suite.to_string(),
            statement: statement.to_string(),
            total: tally.total,
            pass: tally.pass,
            fail: tally.fail,
            inconclusive: tally.inconclusive,
            counterexample: tally.counterexample,
            first_inconclusive: tally.first_inconclusive,
            seed,
            wall_ms,
        }
    }

    pub fn passed(&self) -> bool {
        self.fail == 0 && self.inconclusive == 0
    }

    /// The report without its timing field, for reproducibility checks.
    pub fn deterministic_part(&self) -> SuiteReport {
        SuiteReport {
            wall_ms: 0,
            ..self.clone()
        }
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}

/// Exit code for a set of reports: any failure wins over inconclusive results.
pub fn exit_code(reports: &[SuiteReport]) -> i32 {
    if reports.iter().any(|r| r.fail > 0) {
        exit::VIOLATION
    } else if reports.iter().any(|r| r.inconclusive > 0) {
        exit::INCONCLUSIVE
    } else {
        exit::PASS
    }
}

/// Human-readable summary, one line per suite.
pub fn summary(reports: &[SuiteReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let status = if r.fail > 0 {
            "FAIL"
        } else if r.inconclusive > 0 {
            "INCONCLUSIVE"
        } else {
            "PASS"
        };
        let _ = writeln!(
            out,
            "{status:<12} {:<26} {} pass / {} fail / {} inconclusive of {} ({} ms, seed {})",
            r.suite, r.pass, r.fail, r.inconclusive, r.total, r.wall_ms, r.seed
        );
        if let Some(c) = &r.counterexample {
            let _ = writeln!(out, "             first counterexample: {c}");
        } else if let Some(c) = &r.first_inconclusive {
            let _ = writeln!(out, "             first inconclusive: {c}");
        }
    }
    out
}
