use serde::Serialize;

use crate::error::Result;
use crate::linalg::{loewner_gap, CMatrix, HermitianMatrix, PositiveDefiniteMatrix};
use crate::majorization::{compound_cross_check, eig_log_majorizes};

/// What a check is expected to conclude about the claim it tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Expectation {
    Holds,
    /// A counterexample: the claim must be refuted.
    Fails,
    /// Outside the proven parameter range; recorded, never a violation.
    Exploratory,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    /// Part of the mathematical claim; drives the verdict.
    Claim,
    /// Agreement with printed reference values; must always pass.
    Reproduction,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubCheck {
    pub label: String,
    pub role: Role,
    pub margin: f64,
    pub slack: f64,
    /// Whether the compound-matrix oracle agreed with the eigenvalue verdict.
    pub oracle_agrees: Option<bool>,
}

impl SubCheck {
    pub fn passed(&self) -> bool {
        self.margin >= -self.slack
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NamedMatrix {
    pub name: String,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl NamedMatrix {
    pub fn new(name: &str, m: &CMatrix) -> Self {
        let rows = |f: fn(&nalgebra::Complex<f64>) -> f64| {
            (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| f(&m[(i, j)])).collect()).collect()
        };
        NamedMatrix { name: name.to_string(), re: rows(|z| z.re), im: rows(|z| z.im) }
    }
}

/// Inputs that reproduce a failing check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub matrices: Vec<NamedMatrix>,
    pub params: Vec<(String, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub check_id: String,
    /// `None` for fixed-input cases.
    pub trial: Option<usize>,
    pub seed: u64,
    pub expected: Expectation,
    pub verdict: bool,
    pub worst_margin: f64,
    pub witness: Option<Witness>,
    pub detail: Vec<SubCheck>,
}

impl CheckOutcome {
    /// The expected verdict was not met, or a reproduction sub-check failed.
    pub fn is_violation(&self) -> bool {
        let verdict_wrong = match self.expected {
            Expectation::Holds => !self.verdict,
            Expectation::Fails => self.verdict,
            Expectation::Exploratory => false,
        };
        verdict_wrong || self.detail.iter().any(|s| s.role == Role::Reproduction && !s.passed())
    }

    /// A theorem failure whose margin exceeds `threshold`, beyond any roundoff excuse.
    pub fn is_hard_failure(&self, threshold: f64) -> bool {
        self.expected == Expectation::Holds && self.worst_margin < -threshold
    }

    /// `(compared, agreed)` counts of compound-oracle comparisons.
    pub fn oracle_counts(&self) -> (usize, usize) {
        self.detail.iter().filter_map(|s| s.oracle_agrees).fold((0, 0), |(c, a), ok| (c + 1, a + ok as usize))
    }

    /// Appends another outcome's sub-checks under a label prefix.
    pub fn absorb(&mut self, other: CheckOutcome, prefix: &str) {
        for mut sub in other.detail {
            sub.label = format!("{prefix}{}", sub.label);
            self.detail.push(sub);
        }
        if other.witness.is_some() && self.witness.is_none() {
            self.witness = other.witness;
        }
        self.refresh();
    }

    pub(crate) fn refresh(&mut self) {
        let claims = self.detail.iter().filter(|s| s.role == Role::Claim);
        self.worst_margin = claims.clone().map(|s| s.margin).fold(f64::INFINITY, f64::min);
        self.verdict = claims.clone().all(SubCheck::passed);
        if !self.worst_margin.is_finite() {
            self.worst_margin = 0.0;
        }
    }

    pub fn empty(check_id: &str, expected: Expectation) -> Self {
        CheckOutcome {
            check_id: check_id.to_string(),
            trial: None,
            seed: 0,
            expected,
            verdict: true,
            worst_margin: 0.0,
            witness: None,
            detail: Vec::new(),
        }
    }
}

/// Slack and oracle settings shared by all checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckOptions {
    /// Allowed negative margin for inequality claims (relative / log-space).
    pub slack: f64,
    /// Allowed negative margin for Löwner-order claims, relative to `λ_1`.
    pub psd_slack: f64,
    /// Run the compound-matrix oracle for log-majorization when `n` is at most this.
    pub cross_check_max_dim: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { slack: 1e-8, psd_slack: 1e-9, cross_check_max_dim: 4 }
    }
}

/// Accumulates sub-checks for one outcome.
pub(crate) struct Recorder {
    id: String,
    opts: CheckOptions,
    detail: Vec<SubCheck>,
    witness: Vec<NamedMatrix>,
    params: Vec<(String, f64)>,
}

impl Recorder {
    pub fn new(id: &str, opts: &CheckOptions) -> Self {
        Recorder { id: id.to_string(), opts: *opts, detail: Vec::new(), witness: Vec::new(), params: Vec::new() }
    }

    pub fn input(&mut self, name: &str, m: &CMatrix) -> &mut Self {
        self.witness.push(NamedMatrix::new(name, m));
        self
    }

    pub fn param(&mut self, name: &str, v: f64) -> &mut Self {
        self.params.push((name.to_string(), v));
        self
    }

    fn push(&mut self, label: &str, role: Role, margin: f64, slack: f64, oracle_agrees: Option<bool>) {
        let margin = if margin.is_nan() { f64::NEG_INFINITY } else { margin };
        self.detail.push(SubCheck { label: label.to_string(), role, margin, slack, oracle_agrees });
    }

    /// Inequality claim with the standard slack.
    pub fn claim(&mut self, label: &str, margin: f64) {
        self.push(label, Role::Claim, margin, self.opts.slack, None);
    }

    /// Threshold claim (`margin = threshold − value`), no slack.
    pub fn bound(&mut self, label: &str, value: f64, threshold: f64) {
        self.push(label, Role::Claim, threshold - value, 0.0, None);
    }

    pub fn reproduce(&mut self, label: &str, value: f64, threshold: f64) {
        self.push(label, Role::Reproduction, threshold - value, 0.0, None);
    }

    /// `lower ≺_log upper`, cross-checked with compound matrices for small `n`.
    pub fn log_majorized(&mut self, label: &str, lower: &PositiveDefiniteMatrix, upper: &PositiveDefiniteMatrix) -> Result<bool> {
        let report = eig_log_majorizes(lower, upper, self.opts.slack)?;
        let oracle = if lower.dim() <= self.opts.cross_check_max_dim {
            Some(compound_cross_check(lower, upper, self.opts.slack)? == report.verdict)
        } else {
            None
        };
        self.push(label, Role::Claim, report.worst_margin(), self.opts.slack, oracle);
        Ok(report.verdict)
    }

    /// `upper − lower ≥ 0`, margin `λ_min(upper − lower) / scale`.
    pub fn loewner(&mut self, label: &str, upper: &HermitianMatrix, lower: &HermitianMatrix, scale: f64) -> Result<()> {
        let gap = loewner_gap(upper, lower)?;
        self.push(label, Role::Claim, gap / scale, self.opts.psd_slack, None);
        Ok(())
    }

    pub fn finish(self, expected: Expectation) -> CheckOutcome {
        let mut out = CheckOutcome::empty(&self.id, expected);
        out.detail = self.detail;
        out.refresh();
        let unexpected = match expected {
            Expectation::Holds => !out.verdict,
            _ => true,
        };
        if unexpected || out.is_violation() {
            out.witness = Some(Witness { matrices: self.witness, params: self.params });
        }
        out
    }
}

pub(crate) fn rel_diff(x: &CMatrix, y: &CMatrix) -> f64 {
    crate::linalg::max_abs(&(x - y)) / crate::linalg::max_abs(y).max(f64::MIN_POSITIVE)
}
