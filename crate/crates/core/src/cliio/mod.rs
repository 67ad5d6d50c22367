//! File formats, seeded runs of the property suites, and the pieces of the
//! command line tool that are worth testing without spawning a process.

pub mod format;
mod run;
pub mod suites;

pub use format::{from_json, to_json, Artifact};
pub use run::{persist_counterexamples, run_suites, trial_rng, FailureRecord, RunReport, SuiteConfig, SuiteReport};
