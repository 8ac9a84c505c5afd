//! Independent brute-force checks: invariance fuzzing, degeneration probes
//! and exhaustive classification cross-checks.

pub mod probe;
pub mod suite;

pub use probe::{degeneration_probe, Degeneration};
pub use suite::{classification_crosscheck, invariance_suite, Failure, SuiteReport};
