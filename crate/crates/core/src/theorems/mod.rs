//! Executable encodings of the identities, log-majorization inequalities,
//! limits and counterexamples for the metric and spectral means.

pub mod checks;
pub mod fixtures;
pub mod outcome;
pub mod suite;

pub use checks::*;
pub use outcome::{CheckOptions, CheckOutcome, Expectation, NamedMatrix, Role, SubCheck, Witness};
pub use suite::{run_suite, SuiteConfig, SuiteSummary};
