//! CSV and JSON serialization of suite results and limit studies.
//!
//! Report columns are fixed: `check_id, trial, verdict, worst_margin, seed`.
//! Fixed-input cases leave `trial` empty. Floats use the shortest decimal that
//! round-trips, so identical outcomes give identical bytes.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::theorems::{CheckOutcome, SuiteSummary};

pub const REPORT_COLUMNS: [&str; 5] = ["check_id", "trial", "verdict", "worst_margin", "seed"];

#[derive(Serialize)]
struct ReportRow<'a> {
    check_id: &'a str,
    trial: Option<usize>,
    verdict: bool,
    worst_margin: f64,
    seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitRow {
    pub p: f64,
    pub err_spectral_mean: f64,
    pub err_sandwich: f64,
    pub trace_spectral: f64,
    pub trace_target: f64,
}

fn csv_error(e: impl std::fmt::Display) -> Error {
    Error::InvalidParameter(format!("csv serialization failed: {e}"))
}

fn to_csv<T: Serialize>(rows: impl IntoIterator<Item = T>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).map_err(csv_error)?;
    }
    let bytes = w.into_inner().map_err(csv_error)?;
    String::from_utf8(bytes).map_err(csv_error)
}

pub fn report_csv(outcomes: &[CheckOutcome]) -> Result<String> {
    to_csv(outcomes.iter().map(|o| ReportRow {
        check_id: &o.check_id,
        trial: o.trial,
        verdict: o.verdict,
        worst_margin: o.worst_margin,
        seed: o.seed,
    }))
}

pub fn limit_csv(rows: &[LimitRow]) -> Result<String> {
    to_csv(rows)
}

/// Non-finite margins are written as `null`.
pub fn summary_json(summary: &SuiteSummary) -> String {
    serde_json::to_string_pretty(summary).expect("summary serializes") + "\n"
}
