//! Published counterexample inputs, embedded verbatim at four decimals.
//!
//! Since the inputs are rounded, reproduction tolerances are set from the
//! printed precision: spectra within `5e-4`, matrix entries within `1e-3`,
//! and the Löwner counterexample eigenvalues within `5e-3`.

use crate::error::Result;
use crate::linalg::{hermitian_eig, mat_power, HermitianMatrix, PositiveDefiniteMatrix, Spectrum};
use crate::majorization::{eig_log_majorizes, MajorizationReport, MAJORIZATION_TOL};
use crate::means::{spectral_mean, Weight};

pub const NATLOG_A: [f64; 4] = [79.1784, 19.0569, 19.0569, 85.5520];
pub const NATLOG_B: [f64; 4] = [76.5012, 49.4980, 49.4980, 57.1403];
pub const NATLOG_T: f64 = 1.0 / 3.0;
pub const NATLOG_S: f64 = 2.1;
pub const NATLOG_PRINTED_LHS: [f64; 4] = [76.2413, 32.5902, 32.5902, 70.2008];
pub const NATLOG_PRINTED_MEAN: [f64; 4] = [75.6010, 32.6424, 32.6424, 70.8404];
pub const NATLOG_PRINTED_LHS_SPECTRUM: [f64; 2] = [105.9509, 40.4911];
pub const NATLOG_PRINTED_MEAN_SPECTRUM: [f64; 2] = [105.9498, 40.4916];

pub const LOEWNER_A: [f64; 4] = [36.4987, -34.0028, -34.0028, 39.8198];
pub const LOEWNER_B1: [f64; 4] = [6.8259, -11.0027, -11.0027, 33.6773];
pub const LOEWNER_B2: [f64; 4] = [2.5166, -0.2222, -0.2222, 3.4253];
pub const LOEWNER_T: f64 = 1.0 / 3.0;
pub const LOEWNER_PRINTED_MEAN1: [f64; 4] = [21.5984, -24.0515, -24.0515, 36.6270];
pub const LOEWNER_PRINTED_MEAN2: [f64; 4] = [13.4040, -10.9429, -10.9429, 15.7328];
pub const LOEWNER_PRINTED_DIFF_SPECTRUM: [f64; 2] = [29.1098, -0.0213];

pub const SPECTRUM_TOL: f64 = 5e-4;
pub const ENTRY_TOL: f64 = 1e-3;
pub const DIFF_SPECTRUM_TOL: f64 = 5e-3;

pub fn pd2(data: &[f64; 4]) -> PositiveDefiniteMatrix {
    PositiveDefiniteMatrix::from_real(2, data).expect("embedded fixture is positive definite")
}

/// Largest absolute entrywise difference against a printed row-major 2×2 matrix.
pub fn entry_delta(m: &HermitianMatrix, printed: &[f64; 4]) -> f64 {
    let mm = m.as_matrix();
    (0..4).map(|k| (mm[(k / 2, k % 2)] - crate::linalg::c64(printed[k])).norm()).fold(0.0, f64::max)
}

pub fn spectrum_delta(s: &Spectrum, printed: &[f64; 2]) -> f64 {
    let printed = Spectrum::new(printed.to_vec()).expect("finite");
    s.values().iter().zip(printed.values()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
}

/// `(B^{ts/2} A^{(1-t)s} B^{ts/2})^{1/s}`.
pub fn araki_term(a: &PositiveDefiniteMatrix, b: &PositiveDefiniteMatrix, t: f64, s: f64) -> Result<PositiveDefiniteMatrix> {
    let outer = mat_power(b, t * s / 2.0)?;
    let inner = mat_power(a, (1.0 - t) * s)?;
    mat_power(&outer.sandwich(&inner)?, 1.0 / s)
}

/// Recomputed quantities of the `s > min(1/t, 2)` counterexample.
#[derive(Debug, Clone)]
pub struct NatlogCounterexample {
    pub lhs: PositiveDefiniteMatrix,
    pub mean: PositiveDefiniteMatrix,
    pub report: MajorizationReport,
    pub lhs_spectrum_delta: f64,
    pub mean_spectrum_delta: f64,
    pub lhs_entry_delta: f64,
    pub mean_entry_delta: f64,
}

impl NatlogCounterexample {
    pub fn compute() -> Result<Self> {
        let (a, b) = (pd2(&NATLOG_A), pd2(&NATLOG_B));
        let lhs = araki_term(&a, &b, NATLOG_T, NATLOG_S)?;
        let mean = spectral_mean(&a, &b, Weight::new(NATLOG_T)?)?;
        let report = eig_log_majorizes(&lhs, &mean, MAJORIZATION_TOL)?;
        Ok(NatlogCounterexample {
            lhs_spectrum_delta: spectrum_delta(lhs.spectrum(), &NATLOG_PRINTED_LHS_SPECTRUM),
            mean_spectrum_delta: spectrum_delta(mean.spectrum(), &NATLOG_PRINTED_MEAN_SPECTRUM),
            lhs_entry_delta: entry_delta(lhs.as_hermitian(), &NATLOG_PRINTED_LHS),
            mean_entry_delta: entry_delta(mean.as_hermitian(), &NATLOG_PRINTED_MEAN),
            lhs,
            mean,
            report,
        })
    }

    pub fn reproduced(&self) -> bool {
        !self.report.verdict
            && self.lhs_spectrum_delta <= SPECTRUM_TOL
            && self.mean_spectrum_delta <= SPECTRUM_TOL
            && self.lhs_entry_delta <= ENTRY_TOL
            && self.mean_entry_delta <= ENTRY_TOL
    }
}

/// Recomputed quantities showing `♮_t` is not monotone in its second argument.
#[derive(Debug, Clone)]
pub struct LoewnerCounterexample {
    /// `λ_min(B1 − B2)`; nonnegative confirms `B1 ≥ B2`.
    pub order_gap: f64,
    pub mean1: PositiveDefiniteMatrix,
    pub mean2: PositiveDefiniteMatrix,
    pub diff_spectrum: Spectrum,
    pub mean1_entry_delta: f64,
    pub mean2_entry_delta: f64,
    pub diff_spectrum_delta: f64,
}

impl LoewnerCounterexample {
    pub fn compute() -> Result<Self> {
        let a = pd2(&LOEWNER_A);
        let (b1, b2) = (pd2(&LOEWNER_B1), pd2(&LOEWNER_B2));
        let order_gap = crate::linalg::loewner_gap(b1.as_hermitian(), b2.as_hermitian())?;
        let t = Weight::new(LOEWNER_T)?;
        let mean1 = spectral_mean(&a, &b1, t)?;
        let mean2 = spectral_mean(&a, &b2, t)?;
        let diff = mean1.as_hermitian().combine(1.0, mean2.as_hermitian(), -1.0)?;
        let (diff_spectrum, _) = hermitian_eig(&diff)?;
        Ok(LoewnerCounterexample {
            order_gap,
            mean1_entry_delta: entry_delta(mean1.as_hermitian(), &LOEWNER_PRINTED_MEAN1),
            mean2_entry_delta: entry_delta(mean2.as_hermitian(), &LOEWNER_PRINTED_MEAN2),
            diff_spectrum_delta: spectrum_delta(&diff_spectrum, &LOEWNER_PRINTED_DIFF_SPECTRUM),
            mean1,
            mean2,
            diff_spectrum,
        })
    }

    pub fn difference_is_psd(&self) -> bool {
        self.diff_spectrum.smallest() >= -1e-9 * self.diff_spectrum.largest().abs()
    }

    pub fn reproduced(&self) -> bool {
        self.order_gap >= 0.0
            && !self.difference_is_psd()
            && self.mean1_entry_delta <= ENTRY_TOL
            && self.mean2_entry_delta <= ENTRY_TOL
            && self.diff_spectrum_delta <= DIFF_SPECTRUM_TOL
    }
}
