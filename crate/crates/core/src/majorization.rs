//! Majorization, weak majorization and log majorization of spectra.
//!
//! Every comparison reports per-prefix margins (dominant minus dominated) so a
//! caller can see how close an inequality came to failing, not just the verdict.
//! Log majorization is evaluated as cumulative sums of logarithms.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{check_same_dim, compound, jacobi_svd, hermitian_eig, hermitize, CMatrix, HermitianMatrix, PositiveDefiniteMatrix, Spectrum};

/// Default slack for majorization verdicts (log-space absolute for `≺_log`).
pub const MAJORIZATION_TOL: f64 = 1e-9;

/// Entries below this are rejected by log-space comparisons.
pub const LOG_ENTRY_FLOOR: f64 = 1e-300;

/// Largest dimension accepted by [`compound_cross_check`].
pub const COMPOUND_MAX_DIM: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MajorizationKind {
    Majorize,
    WeakMajorize,
    LogMajorize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MajorizationReport {
    pub kind: MajorizationKind,
    /// `margins[k-1]` is the slack of the `k`-th prefix inequality.
    pub margins: Vec<f64>,
    /// Mismatch of the full sums (or log-products); zero for weak majorization.
    pub equality_defect: f64,
    /// Effective slack used for the verdict.
    pub tolerance: f64,
    pub verdict: bool,
}

impl MajorizationReport {
    fn build(kind: MajorizationKind, margins: Vec<f64>, equality_defect: f64, tolerance: f64) -> Self {
        let prefix_ok = margins.iter().all(|&m| m >= -tolerance);
        let equality_ok = kind == MajorizationKind::WeakMajorize || equality_defect.abs() <= tolerance;
        MajorizationReport { kind, margins, equality_defect, tolerance, verdict: prefix_ok && equality_ok }
    }

    /// Smallest slack, counting a total mismatch in either direction as negative.
    pub fn worst_margin(&self) -> f64 {
        let prefix = self.margins.iter().copied().fold(f64::INFINITY, f64::min);
        match self.kind {
            MajorizationKind::WeakMajorize => prefix,
            _ => prefix.min(-self.equality_defect.abs()),
        }
    }
}

fn prefix_margins(y: &[f64], x: &[f64]) -> Vec<f64> {
    let mut sy = 0.0;
    let mut sx = 0.0;
    y.iter()
        .zip(x)
        .map(|(a, b)| {
            sy += a;
            sx += b;
            sy - sx
        })
        .collect()
}

fn sum_scale(y: &Spectrum, x: &Spectrum) -> f64 {
    y.values().iter().chain(x.values()).map(|v| v.abs()).fold(1.0, f64::max)
}

/// `x ≺ y`: prefix sums of `x` bounded by those of `y`, equal totals.
/// The slack is `tol` times the largest entry magnitude (at least 1).
pub fn majorizes(y: &Spectrum, x: &Spectrum, tol: f64) -> Result<MajorizationReport> {
    if y.len() != x.len() {
        return Err(Error::LengthMismatch { left: y.len(), right: x.len() });
    }
    let margins = prefix_margins(y.values(), x.values());
    let defect = margins.last().copied().unwrap_or(0.0);
    Ok(MajorizationReport::build(MajorizationKind::Majorize, margins, defect, tol * sum_scale(y, x)))
}

/// `x ≺_w y`: as [`majorizes`] without the equal-total constraint.
pub fn weak_majorizes(y: &Spectrum, x: &Spectrum, tol: f64) -> Result<MajorizationReport> {
    if y.len() != x.len() {
        return Err(Error::LengthMismatch { left: y.len(), right: x.len() });
    }
    let margins = prefix_margins(y.values(), x.values());
    Ok(MajorizationReport::build(MajorizationKind::WeakMajorize, margins, 0.0, tol * sum_scale(y, x)))
}

fn logs(s: &Spectrum) -> Result<Vec<f64>> {
    s.values()
        .iter()
        .map(|&v| {
            if v < 0.0 {
                Err(Error::NegativeEntry(v))
            } else if v < LOG_ENTRY_FLOOR {
                Err(Error::UnderflowEntry(v))
            } else {
                Ok(v.ln())
            }
        })
        .collect()
}

/// `x ≺_log y`: prefix products of `x` bounded by those of `y`, equal full
/// products, all compared in log space with absolute slack `tol`.
pub fn log_majorizes(y: &Spectrum, x: &Spectrum, tol: f64) -> Result<MajorizationReport> {
    if y.len() != x.len() {
        return Err(Error::LengthMismatch { left: y.len(), right: x.len() });
    }
    let ly = logs(y)?;
    let lx = logs(x)?;
    let margins = prefix_margins(&ly, &lx);
    let defect = margins.last().copied().unwrap_or(0.0);
    Ok(MajorizationReport::build(MajorizationKind::LogMajorize, margins, defect, tol))
}

/// A matrix whose spectrum is real and nonnegative.
#[derive(Debug, Clone, Copy)]
pub enum SpectralOperand<'a> {
    Hermitian(&'a HermitianMatrix),
    PositiveDefinite(&'a PositiveDefiniteMatrix),
    /// `AB` with `A, B > 0`; its eigenvalues are those of `A^{1/2} B A^{1/2}`.
    Product(&'a PositiveDefiniteMatrix, &'a PositiveDefiniteMatrix),
    /// Any matrix known to be diagonalizable with nonnegative spectrum.
    General(&'a CMatrix),
}

impl<'a> From<&'a PositiveDefiniteMatrix> for SpectralOperand<'a> {
    fn from(p: &'a PositiveDefiniteMatrix) -> Self {
        SpectralOperand::PositiveDefinite(p)
    }
}

impl<'a> From<&'a HermitianMatrix> for SpectralOperand<'a> {
    fn from(h: &'a HermitianMatrix) -> Self {
        SpectralOperand::Hermitian(h)
    }
}

/// Imaginary parts up to this fraction of the spectral radius are discarded.
const NONREAL_TOL: f64 = 1e-8;

impl SpectralOperand<'_> {
    pub fn dim(&self) -> usize {
        match self {
            SpectralOperand::Hermitian(h) => h.dim(),
            SpectralOperand::PositiveDefinite(p) => p.dim(),
            SpectralOperand::Product(a, _) => a.dim(),
            SpectralOperand::General(m) => m.nrows(),
        }
    }

    pub fn spectrum(&self) -> Result<Spectrum> {
        match self {
            SpectralOperand::Hermitian(h) => hermitian_eig(h).map(|(s, _)| s),
            SpectralOperand::PositiveDefinite(p) => Ok(p.spectrum().clone()),
            SpectralOperand::Product(a, b) => {
                check_same_dim(a.dim(), b.dim())?;
                let root = crate::linalg::mat_power(a, 0.5)?;
                Ok(root.sandwich(b)?.spectrum().clone())
            }
            SpectralOperand::General(m) => general_spectrum(m),
        }
    }
}

fn general_spectrum(m: &CMatrix) -> Result<Spectrum> {
    if m.nrows() != m.ncols() {
        return Err(Error::NotSquare { rows: m.nrows(), cols: m.ncols() });
    }
    let eig = m
        .clone()
        .try_schur(f64::EPSILON, 10_000)
        .and_then(|s| s.eigenvalues())
        .ok_or(Error::EigFailure)?;
    let radius = eig.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let worst_im = eig.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    if worst_im > NONREAL_TOL * radius.max(1.0) {
        return Err(Error::NonrealSpectrum(worst_im));
    }
    Spectrum::new(eig.iter().map(|z| z.re).collect())
}

/// `X ≺_log Y` on eigenvalues. Tiny negative eigenvalues (roundoff on PSD
/// inputs) are clipped to zero and then rejected by the log floor.
pub fn eig_log_majorizes<'a, 'b>(
    x: impl Into<SpectralOperand<'a>>,
    y: impl Into<SpectralOperand<'b>>,
    tol: f64,
) -> Result<MajorizationReport> {
    let (x, y) = (x.into(), y.into());
    check_same_dim(x.dim(), y.dim())?;
    let sx = clip_roundoff(x.spectrum()?)?;
    let sy = clip_roundoff(y.spectrum()?)?;
    log_majorizes(&sy, &sx, tol)
}

fn clip_roundoff(s: Spectrum) -> Result<Spectrum> {
    let scale = s.largest().abs().max(s.smallest().abs());
    s.map(|v| if v < 0.0 && v > -1e-12 * scale { 0.0 } else { v })
}

/// Sum of the `k` largest singular values.
pub fn ky_fan_norm(x: &CMatrix, k: usize) -> Result<f64> {
    let n = x.nrows().min(x.ncols());
    if k == 0 || k > n {
        return Err(Error::BadOrder { k, n });
    }
    let size = x.nrows().max(x.ncols());
    let mut square = CMatrix::zeros(size, size);
    square.view_mut((0, 0), (x.nrows(), x.ncols())).copy_from(x);
    let sv = jacobi_svd(&square)?.singular_values;
    Ok(sv[..k].iter().sum())
}

/// Compound-matrix test of `X ≺_log Y`: `λ_1(C_k(X)) ≤ λ_1(C_k(Y))·(1+tol)` for
/// every `k < n`, and `det X = det Y` to relative `tol`.
pub fn compound_cross_check(x: &PositiveDefiniteMatrix, y: &PositiveDefiniteMatrix, tol: f64) -> Result<bool> {
    check_same_dim(x.dim(), y.dim())?;
    let n = x.dim();
    if n > COMPOUND_MAX_DIM {
        return Err(Error::InvalidParameter(format!("compound cross-check limited to n <= {COMPOUND_MAX_DIM}, got {n}")));
    }
    for k in 1..n {
        // minors of a Hermitian matrix form a Hermitian matrix up to roundoff
        let cx = HermitianMatrix::new(hermitize(&compound(x.as_matrix(), k)?))?.spectrum()?.largest();
        let cy = HermitianMatrix::new(hermitize(&compound(y.as_matrix(), k)?))?.spectrum()?.largest();
        if cx > cy * (1.0 + tol) {
            return Ok(false);
        }
    }
    let dx = compound(x.as_matrix(), n)?[(0, 0)].re;
    let dy = compound(y.as_matrix(), n)?[(0, 0)].re;
    Ok((dx / dy - 1.0).abs() <= tol)
}
