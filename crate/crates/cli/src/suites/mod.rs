//! Verification suites, registered by name and selected at run time.

mod commutator;
mod fixtures;
mod hypotheses;
mod lengths;
mod mixing;
mod mmap;
mod normal_form;
mod quotient;
mod syllable_step;

use std::sync::OnceLock;
use std::time::Instant;

use thiserror::Error;

use crate::config::{ConfigError, Loaded};
use crate::report::SuiteReport;
use crate::runner::Tally;

pub use commutator::{CommutatorCases, CrossedCommutatorCases};
pub use hypotheses::Hypotheses;
pub use lengths::LengthFunctions;
pub use mixing::MixingSupport;
pub use mmap::MmapEstimates;
pub use normal_form::NormalForm;
pub use quotient::Quotient;
pub use syllable_step::SyllableStep;

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("unknown suite {name:?}; known suites: {known}")]
    Unknown { name: String, known: String },
    #[error("suite {suite}: {message}")]
    Setup { suite: &'static str, message: String },
}

/// Run parameters shared by every suite.
#[derive(Debug, Clone, Copy)]
pub struct SuiteContext<'a> {
    pub seed: u64,
    pub samples: Option<usize>,
    pub radius: Option<usize>,
    pub budget: usize,
    pub config: Option<&'a Loaded>,
}

impl SuiteContext<'_> {
    /// A context with built-in instances only.
    pub fn builtin(seed: u64) -> SuiteContext<'static> {
        SuiteContext {
            seed,
            samples: None,
            radius: None,
            budget: crate::config::capped_budget(gwkit_core::lengths::DEFAULT_BUDGET),
            config: None,
        }
    }

    pub fn samples_or(&self, default: usize) -> usize {
        self.samples.unwrap_or(default)
    }

    pub fn radius_or(&self, default: usize) -> usize {
        self.radius.unwrap_or(default)
    }
}

/// One named family of checks.
pub trait Suite: Send + Sync {
    fn name(&self) -> &'static str;

    /// The property being checked, in words.
    fn statement(&self) -> &'static str;

    fn run(&self, ctx: &SuiteContext) -> Result<Tally, SuiteError>;
}

/// Suites keyed by name, in registration order.
pub struct SuiteRegistry {
    suites: Vec<Box<dyn Suite>>,
}

impl SuiteRegistry {
    pub fn new() -> Self {
        Self { suites: Vec::new() }
    }

    pub fn register(&mut self, suite: impl Suite + 'static) -> &mut Self {
        assert!(self.get(suite.name()).is_none(), "duplicate suite {}", suite.name());
        self.suites.push(Box::new(suite));
        self
    }

    pub fn get(&self, name: &str) -> Option<&dyn Suite> {
        self.suites.iter().find(|s| s.name() == name).map(|s| s.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.suites.iter().map(|s| s.name()).collect()
    }

    pub fn lookup(&self, name: &str) -> Result<&dyn Suite, SuiteError> {
        self.get(name).ok_or_else(|| SuiteError::Unknown {
            name: name.to_string(),
            known: self.names().join(", "),
        })
    }
}

impl Default for SuiteRegistry {
    fn default() -> Self {
        Self::new()
    }
}

pub fn registry() -> &'static SuiteRegistry {
    static REGISTRY: OnceLock<SuiteRegistry> = OnceLock::new();
    REGISTRY.get_or_init(|| {
        let mut r = SuiteRegistry::new();
        r.register(NormalForm)
            .register(SyllableStep)
            .register(LengthFunctions)
            .register(MmapEstimates)
            .register(CommutatorCases)
            .register(CrossedCommutatorCases)
            .register(MixingSupport)
            .register(Quotient)
            .register(Hypotheses);
        r
    })
}

/// Runs one suite and wraps its tally in a report.
pub fn run_suite(suite: &dyn Suite, ctx: &SuiteContext) -> Result<SuiteReport, SuiteError> {
    let start = Instant::now();
    let tally = suite.run(ctx)?;
    Ok(SuiteReport::new(
        suite.name(),
        suite.statement(),
        tally,
        ctx.seed,
        start.elapsed().as_millis() as u64,
    ))
}

/// Runs the named suites, or every registered suite when `names` is empty.
pub fn run_named(names: &[String], ctx: &SuiteContext) -> Result<Vec<SuiteReport>, SuiteError> {
    let r = registry();
    let selected: Vec<&dyn Suite> = if names.is_empty() {
        r.suites.iter().map(|s| s.as_ref()).collect()
    } else {
        names.iter().map(|n| r.lookup(n)).collect::<Result<_, _>>()?
    };
    selected.into_iter().map(|s| run_suite(s, ctx)).collect()
}

/// A stable per-name RNG stream id (FNV-1a).
pub(crate) fn stream_id(name: &str) -> u64 {
    name.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

fn setup(suite: &'static str, e: impl ToString) -> SuiteError {
    SuiteError::Setup {
        suite,
        message: e.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_is_registered_once() {
        let names = registry().names();
        assert_eq!(names.len(), 9);
        assert!(matches!(registry().lookup("nope"), Err(SuiteError::Unknown { .. })));
    }
}
