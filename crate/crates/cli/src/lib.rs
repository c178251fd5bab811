//! Verification suites and command-line front end for `gwkit-core`.
//!
//! A run is described by a JSON [`config::RunConfig`]. Suites are looked up by
//! name in [`suites::registry`], run their instances in parallel under a
//! per-instance seeded RNG and produce one [`report::SuiteReport`] each.

pub mod commands;
pub mod config;
pub mod oracle;
pub mod report;
pub mod runner;
pub mod sample;
pub mod suites;

/// Process exit codes.
pub mod exit {
    pub const PASS: i32 = 0;
    pub const VIOLATION: i32 = 1;
    pub const CONFIG: i32 = 2;
    pub const INCONCLUSIVE: i32 = 3;
}
