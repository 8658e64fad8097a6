//! One function per inequality, identity, limit or counterexample.
//!
//! Each check evaluates both sides, records every sub-inequality as a margin
//! (negative means violated) and returns a [`CheckOutcome`]. Log-majorization
//! margins are log-space, Löwner margins are `λ_min(difference) / λ_1`, and
//! identity margins are `threshold − relative difference`.

use crate::error::{Error, Result};
use crate::linalg::{
    check_same_dim, hermitian_eig, loewner_gap, mat_exp, mat_log, mat_power, spectral_norm, HermitianMatrix,
    PositiveDefiniteMatrix, Spectrum,
};
use crate::majorization::SpectralOperand;
use crate::means::{g_factor, geometric_mean, metric_mean, similarity_witness, spectral_mean, Weight, SIMILARITY_TOL};

use super::fixtures::{
    araki_term, pd2, LoewnerCounterexample, NatlogCounterexample, DIFF_SPECTRUM_TOL, ENTRY_TOL, NATLOG_A, NATLOG_B,
    NATLOG_S, NATLOG_T, SPECTRUM_TOL,
};
use super::outcome::{rel_diff, CheckOptions, CheckOutcome, Expectation, Recorder};

/// Relative tolerance for the algebraic identities of `♮_t`.
pub const IDENTITY_TOL: f64 = 1e-8;
/// Relative tolerance for determinant, homogeneity and the square-root spectrum property.
pub const SPECTRAL_IDENTITY_TOL: f64 = 1e-9;
/// Below this error the limit studies stop enforcing monotone descent.
pub const LIMIT_FLOOR: f64 = 1e-8;
/// Required error at the smallest grid point of a limit study.
pub const LIMIT_THRESHOLD: f64 = 1e-2;

fn positive(name: &str, v: f64) -> Result<()> {
    if !(v > 0.0) || !v.is_finite() {
        return Err(Error::InvalidParameter(format!("{name} = {v} must be positive")));
    }
    Ok(())
}

fn unit_interval(name: &str, v: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&v) {
        return Err(Error::InvalidParameter(format!("{name} = {v} must lie in [0, 1]")));
    }
    Ok(())
}

fn pair(a: &PositiveDefiniteMatrix, b: &PositiveDefiniteMatrix, id: &str, opts: &CheckOptions) -> Result<Recorder> {
    check_same_dim(a.dim(), b.dim())?;
    let mut rec = Recorder::new(id, opts);
    rec.input("A", a.as_matrix()).input("B", b.as_matrix());
    Ok(rec)
}

/// `(A♮_t B)^{-1} = A^{-1}♮_t B^{-1}`, `A♮_t B = B♮_{1-t}A`, the three forms of
/// `G_t`, `B♮_t A = G_t^{-1} B G_t^{-1}`, and
/// `(A♮_r B)♮_t(A♮_s B) = A♮_{(1-t)r+ts} B`.
pub fn check_identities(
    a: &PositiveDefiniteMatrix,
    b: &PositiveDefiniteMatrix,
    t: Weight,
    r: Weight,
    s: Weight,
    opts: &CheckOptions,
) -> Result<CheckOutcome> {
    let mut rec = pair(a, b, "identities", opts)?;
    rec.param("t", t.value()).param("r", r.value()).param("s", s.value());

    let mean = spectral_mean(a, b, t)?;
    let inv_of_mean = mean.inverse()?;
    let mean_of_inv = spectral_mean(&a.inverse()?, &b.inverse()?, t)?;
    rec.bound("inverse", rel_diff(inv_of_mean.as_matrix(), mean_of_inv.as_matrix()), IDENTITY_TOL);
    let reversed = spectral_mean(b, a, t.complement())?;
    rec.bound("reversal", rel_diff(reversed.as_matrix(), mean.as_matrix()), IDENTITY_TOL);

    let g = g_factor(a, b, t)?;
    let via_mean = geometric_mean(&a.inverse()?, &mean)?;
    rec.bound("g_factor/A^-1#mean", rel_diff(via_mean.as_matrix(), g.as_matrix()), IDENTITY_TOL);
    let reverse_mean = spectral_mean(b, a, t)?;
    let via_reverse = geometric_mean(&reverse_mean.inverse()?, b)?;
    rec.bound("g_factor/reverse", rel_diff(via_reverse.as_matrix(), g.as_matrix()), IDENTITY_TOL);
    let g_inv = g.inverse()?;
    let conj = g_inv.sandwich(b)?;
    rec.bound("reverse=G^-1 B G^-1", rel_diff(conj.as_matrix(), reverse_mean.as_matrix()), IDENTITY_TOL);

    let left = spectral_mean(&spectral_mean(a, b, r)?, &spectral_mean(a, b, s)?, t)?;
    let w = Weight::new(((1.0 - t.value()) * r.value() + t.value() * s.value()).clamp(0.0, 1.0))?;
    let right = spectral_mean(a, b, w)?;
    rec.bound("interpolation", rel_diff(left.as_matrix(), right.as_matrix()), IDENTITY_TOL);
    Ok(rec.finish(Expectation::Holds))
}

/// Sorted eigenvalues of `A♮B` are the square roots of those of `AB`.
pub fn check_fiedler_ptak(a: &PositiveDefiniteMatrix, b: &PositiveDefiniteMatrix, opts: &CheckOptions) -> Result<CheckOutcome> {
    let mut rec = pair(a, b, "fiedler_ptak", opts)?;
    let mean = spectral_mean(a, b, Weight::HALF)?;
    let product = SpectralOperand::Product(a, b).spectrum()?;
    let roots = product.map(f64::sqrt)?;
    rec.bound("sqrt_spectrum", spectrum_rel_gap(mean.spectrum(), &roots), SPECTRAL_IDENTITY_TOL);
    Ok(rec.finish(Expectation::Holds))
}

/// Elementwise relative gap between two sorted spectra of equal length.
pub fn spectrum_rel_gap(x: &Spectrum, y: &Spectrum) -> f64 {
    x.values().iter().zip(y.values()).map(|(p, q)| ((p - q) / q).abs()).fold(0.0, f64::max)
}

/// `det(A♮_t B) = det(A)^{1-t} det(B)^t` and
/// `(αA)♮_t(βB) = α^{1-t} β^t (A♮_t B)` for `α, β ∈ {0.5, 2, 10}`.
pub fn check_det_homogeneity(
    a: &PositiveDefiniteMatrix,
    b: &PositiveDefiniteMatrix,
    t: Weight,
    opts: &CheckOptions,
) -> Result<CheckOutcome> {
    const SCALES: [f64; 3] = [0.5, 2.0, 10.0];
    let mut rec = pair(a, b, "det_homogeneity", opts)?;
    rec.param("t", t.value());
    let tv = t.value();
    let mean = spectral_mean(a, b, t)?;
    let expected = (1.0 - tv) * a.log_determinant() + tv * b.log_determinant();
    rec.bound("determinant", (mean.log_determinant() - expected).abs(), SPECTRAL_IDENTITY_TOL);
    for alpha in SCALES {
        for beta in SCALES {
            let scaled = spectral_mean(&a.scale(alpha)?, &b.scale(beta)?, t)?;
            let factor = alpha.powf(1.0 - tv) * beta.powf(tv);
            let reference = mean.as_matrix() * crate::linalg::c64(factor);
            rec.bound(&format!("homogeneity/{alpha},{beta}"), rel_diff(scaled.as_matrix(), &reference), SPECTRAL_IDENTITY_TOL);
        }
    }
    Ok(rec.finish(Expectation::Holds))
}

fn check_pair_exponents(r: f64, qp: (f64, f64)) -> Result<()> {
    positive("r", r)?;
    positive("q", qp.0)?;
    positive("p", qp.1)?;
    if qp.0 > qp.1 {
        return Err(Error::InvalidParameter(format!("need q <= p, got q = {}, p = {}", qp.0, qp.1)));
    }
    Ok(())
}

/// `A^r♯_t B^r ≺_log (A♯_t B)^r` for `r ≥ 1`, reversed for `r ≤ 1`, and
/// `(A^p♯_t B^p)^{1/p} ≺_log (A^q♯_t B^q)^{1/q}` for `0 < q ≤ p`.
pub fn check_geometric_power(
    a: &PositiveDefiniteMatrix,
    b: &PositiveDefiniteMatrix,
    t: Weight,
    r: f64,
    qp: (f64, f64),
    opts: &CheckOptions,
) -> Result<CheckOutcome> {
    check_pair_exponents(r, qp)?;
    let mut rec = pair(a, b, "geometric_power", opts)?;
    rec.param("t", t.value()).param("r", r).param("q", qp.0).param("p", qp.1);

    let of_powers = metric_mean(&mat_power(a, r)?, &mat_power(b, r)?, t)?;
    let power_of_mean = mat_power(&metric_mean(a, b, t)?, r)?;
    if r >= 1.0 {
        rec.log_majorized("r>=1", &of_powers, &power_of_mean)?;
    }
    if r <= 1.0 {
        rec.log_majorized("r<=1", &power_of_mean, &of_powers)?;
    }
    let scaled = |e: f64| -> Result<PositiveDefiniteMatrix> {
        mat_power(&metric_mean(&mat_power(a, e)?, &mat_power(b, e)?, t)?, 1.0 / e)
    };
    rec.log_majorized("monotone_qp", &scaled(qp.1)?, &scaled(qp.0)?)?;
    Ok(rec.finish(Expectation::Holds))
}

/// `(A♮_t B)^r ≺_log A^r♮_t B^r` for `r ≥ 1`, reversed for `r ≤ 1`, and
/// `(A^q♮_t B^q)^{1/q} ≺_log (A^p♮_t B^p)^{1/p}` for `0 < q ≤ p`.
pub fn check_spectral_power(
    a: &PositiveDefiniteMatrix,
    b: &PositiveDefiniteMatrix,
    t: Weight,
    r: f64,
    qp: (f64, f64),
    opts: &CheckOptions,
) -> Result<CheckOutcome> {
    check_pair_exponents(r, qp)?;
    let mut rec = pair(a, b, "spectral_power", opts)?;
    rec.param("t", t.value()).param("r", r).param("q", qp.0).param("p", qp.1);

    let of_powers = spectral_mean(&mat_power(a, r)?, &mat_power(b, r)?, t)?;
    let power_of_mean = mat_power(&spectral_mean(a, b, t)?, r)?;
    if r >= 1.0 {
        rec.log_majorized("r>=1", &power_of_mean, &of_powers)?;
    }
    if r <= 1.0 {
        rec.log_majorized("r<=1", &of_powers, &power_of_mean)?;
    }
    let scaled = |e: f64| -> Result<PositiveDefiniteMatrix> {
        mat_power(&spectral_mean(&mat_power(a, e)?, &mat_power(b, e)?, t)?, 1.0 / e)
    };
    rec.log_majorized("monotone_qp", &scaled(qp.0)?, &scaled(qp.1)?)?;
    Ok(rec.finish(Expectation::Holds))
}

/// Admissible range `0 < s ≤ min(1/t, 2)` (bound 2 at `t = 0`).
pub fn natlog_bound(t: Weight) -> f64 {
    if t.value() == 0.0 {
        2.0
    } else {
        (1.0 / t.value()).min(2.0)
    }
}

/// `(B^{ts/2} A^{(1-t)s} B^{ts/2})^{1/s} ≺_log A♮_t B` for `0 < s ≤ min(1/t, 2)`.
/// With `force`, larger `s` runs as an exploratory case.
pub fn check_natlog(
    a: &PositiveDefiniteMatrix,
    b: &PositiveDefiniteMatrix,
    t: Weight,
    s: f64,
    force: bool,
    opts: &CheckOptions,
) -> Result<CheckOutcome> {
    positive("s", s)?;
    let bound = natlog_bound(t);
    let in_range = s <= bound * (1.0 + 1e-12);
    if !in_range && !force {
        return Err(Error::SOutOfRange { s, bound });
    }
    let mut rec = pair(a, b, "natlog", opts)?;
    rec.param("t", t.value()).param("s", s);
    let lhs = araki_term(a, b, t.value(), s)?;
    let mean = spectral_mean(a, b, t)?;
    rec.log_majorized("araki<=natural", &lhs, &mean)?;
    Ok(rec.finish(if in_range { Expectation::Holds } else { Expectation::Exploratory }))
}

/// `A♯_t B ≺_log e^{(1-t)log A + t log B} ≺_log B^{t/2}A^{1-t}B^{t/2} ≺_log A♮_t B`,
/// plus the direct link `A♯_t B ≺_log A♮_t B`.
pub fn check_chain(a: &PositiveDefiniteMatrix, b: &PositiveDefiniteMatrix, t: Weight, opts: &CheckOptions) -> Result<CheckOutcome> {
    let mut rec = pair(a, b, "chain", opts)?;
    rec.param("t", t.value());
    let tv = t.value();
    let geometric = metric_mean(a, b, t)?;
    let log_euclid = mat_exp(&mat_log(a)?.combine(1.0 - tv, &mat_log(b)?, tv)?)?;
    let araki = araki_term(a, b, tv, 1.0)?;
    let spectral = spectral_mean(a, b, t)?;
    rec.log_majorized("sharp<=log_euclidean", &geometric, &log_euclid)?;
    rec.log_majorized("log_euclidean<=araki", &log_euclid, &araki)?;
    rec.log_majorized("araki<=natural", &araki, &spectral)?;
    rec.log_majorized("sharp<=natural", &geometric, &spectral)?;
    Ok(rec.finish(Expectation::Holds))
}

/// Validates a limit grid: nonempty, positive, strictly decreasing.
pub fn validate_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidParameter("p grid is empty".into()));
    }
    if grid.iter().any(|p| !(*p > 0.0) || !p.is_finite()) {
        return Err(Error::InvalidParameter("p grid must be positive".into()));
    }
    if grid.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InvalidParameter("p grid must be strictly decreasing".into()));
    }
    Ok(())
}

/// `2^0, 2^-1, …, 2^-max_exp`.
pub fn dyadic_grid(max_exp: u32) -> Vec<f64> {
    (0..=max_exp).map(|k| 0.5f64.powi(k as i32)).collect()
}

/// `(e^{pA} ♮_t e^{pB})^{1/p}`.
pub fn spectral_limit_term(a: &HermitianMatrix, b: &HermitianMatrix, t: Weight, p: f64) -> Result<PositiveDefiniteMatrix> {
    let mean = spectral_mean(&mat_exp(&a.scale(p))?, &mat_exp(&b.scale(p))?, t)?;
    mat_power(&mean, 1.0 / p)
}

/// `(e^{ptB/2} e^{p(1-t)A} e^{ptB/2})^{1/p}`.
pub fn sandwich_limit_term(a: &HermitianMatrix, b: &HermitianMatrix, t: Weight, p: f64) -> Result<PositiveDefiniteMatrix> {
    let tv = t.value();
    let outer = mat_exp(&b.scale(p * tv / 2.0))?;
    let inner = mat_exp(&a.scale(p * (1.0 - tv)))?;
    mat_power(&outer.sandwich(&inner)?, 1.0 / p)
}

/// `e^{(1-t)A + tB}`.
pub fn limit_target(a: &HermitianMatrix, b: &HermitianMatrix, t: Weight) -> Result<PositiveDefiniteMatrix> {
    mat_exp(&a.combine(1.0 - t.value(), b, t.value())?)
}

fn hermitian_pair(a: &HermitianMatrix, b: &HermitianMatrix, id: &str, opts: &CheckOptions) -> Result<Recorder> {
    check_same_dim(a.dim(), b.dim())?;
    let mut rec = Recorder::new(id, opts);
    rec.input("A", a.as_matrix()).input("B", b.as_matrix());
    Ok(rec)
}

/// `tr e^{(1-t)A+tB} ≤ tr (e^{pA}♮_t e^{pB})^{1/p}` at every grid point, with the
/// right side nonincreasing as `p` decreases.
pub fn check_trace_corollary(
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    t: Weight,
    grid: &[f64],
    opts: &CheckOptions,
) -> Result<CheckOutcome> {
    validate_grid(grid)?;
    let mut rec = hermitian_pair(a, b, "trace_corollary", opts)?;
    rec.param("t", t.value());
    let target = limit_target(a, b, t)?.trace();
    let traces = grid.iter().map(|&p| Ok(spectral_limit_term(a, b, t, p)?.trace())).collect::<Result<Vec<_>>>()?;
    for (p, tr) in grid.iter().zip(&traces) {
        rec.claim(&format!("p={p}:trace_bound"), (tr - target) / target);
    }
    for (w, p) in traces.windows(2).zip(&grid[1..]) {
        rec.claim(&format!("p={p}:trace_descent"), (w[0] - w[1]) / w[0]);
    }
    Ok(rec.finish(Expectation::Holds))
}

/// Spectral-norm errors to `e^{(1-t)A+tB}` along the grid.
pub fn limit_errors(
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    t: Weight,
    grid: &[f64],
    term: fn(&HermitianMatrix, &HermitianMatrix, Weight, f64) -> Result<PositiveDefiniteMatrix>,
) -> Result<(Vec<PositiveDefiniteMatrix>, Vec<f64>)> {
    let target = limit_target(a, b, t)?;
    let terms = grid.iter().map(|&p| term(a, b, t, p)).collect::<Result<Vec<_>>>()?;
    let errs = terms.iter().map(|x| spectral_norm(&(x.as_matrix() - target.as_matrix()))).collect();
    Ok((terms, errs))
}

fn record_limit(rec: &mut Recorder, grid: &[f64], terms: &[PositiveDefiniteMatrix], errs: &[f64]) -> Result<()> {
    for (k, w) in errs.windows(2).enumerate() {
        if w[1] > LIMIT_FLOOR {
            rec.claim(&format!("p={}:err_descent", grid[k + 1]), w[0] - w[1]);
        }
    }
    rec.bound("final_err", errs[errs.len() - 1], LIMIT_THRESHOLD);
    for (k, w) in terms.windows(2).enumerate() {
        rec.log_majorized(&format!("p={}:log_descent", grid[k + 1]), &w[1], &w[0])?;
    }
    Ok(())
}

/// `(e^{pA}♮_t e^{pB})^{1/p} → e^{(1-t)A+tB}` with monotone `≺_log` descent.
pub fn check_limit_spectral(
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    t: Weight,
    grid: &[f64],
    opts: &CheckOptions,
) -> Result<CheckOutcome> {
    validate_grid(grid)?;
    let mut rec = hermitian_pair(a, b, "limit_spectral", opts)?;
    rec.param("t", t.value());
    let (terms, errs) = limit_errors(a, b, t, grid, spectral_limit_term)?;
    record_limit(&mut rec, grid, &terms, &errs)?;
    Ok(rec.finish(Expectation::Holds))
}

/// `(e^{ptB/2}e^{p(1-t)A}e^{ptB/2})^{1/p} → e^{(1-t)A+tB}` with monotone descent,
/// each member bounded by `e^A ♮_t e^B` where `p ≤ min(1/t, 2)`.
pub fn check_limit_sandwich(
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    t: Weight,
    grid: &[f64],
    opts: &CheckOptions,
) -> Result<CheckOutcome> {
    validate_grid(grid)?;
    let mut rec = hermitian_pair(a, b, "limit_sandwich", opts)?;
    rec.param("t", t.value());
    let (terms, errs) = limit_errors(a, b, t, grid, sandwich_limit_term)?;
    record_limit(&mut rec, grid, &terms, &errs)?;
    let upper = spectral_mean(&mat_exp(a)?, &mat_exp(b)?, t)?;
    let bound = natlog_bound(t);
    for (p, term) in grid.iter().zip(&terms) {
        if *p <= bound {
            rec.log_majorized(&format!("p={p}:below_natural"), term, &upper)?;
        }
    }
    Ok(rec.finish(Expectation::Holds))
}

fn require_loewner(name: &str, upper: &PositiveDefiniteMatrix, lower: &PositiveDefiniteMatrix, psd_slack: f64) -> Result<()> {
    let gap = loewner_gap(upper.as_hermitian(), lower.as_hermitian())?;
    if gap < -psd_slack * upper.spectrum().largest() {
        return Err(Error::PreconditionNotMet(format!("{name}: smallest eigenvalue of difference is {gap:e}")));
    }
    Ok(())
}

/// `A ≥ C, B ≥ D ⟹ A♯_t B ≥ C♯_t D`.
pub fn check_loewner_monotone_geometric(
    a: &PositiveDefiniteMatrix,
    b: &PositiveDefiniteMatrix,
    c: &PositiveDefiniteMatrix,
    d: &PositiveDefiniteMatrix,
    t: Weight,
    opts: &CheckOptions,
) -> Result<CheckOutcome> {
    check_same_dim(a.dim(), c.dim())?;
    require_loewner("A >= C", a, c, opts.psd_slack)?;
    require_loewner("B >= D", b, d, opts.psd_slack)?;
    let mut rec = pair(a, b, "loewner_geometric", opts)?;
    rec.input("C", c.as_matrix()).input("D", d.as_matrix()).param("t", t.value());
    let upper = metric_mean(a, b, t)?;
    let lower = metric_mean(c, d, t)?;
    rec.loewner("sharp_monotone", upper.as_hermitian(), lower.as_hermitian(), upper.spectrum().largest())?;
    Ok(rec.finish(Expectation::Holds))
}

/// `A ≥ B > 0 ⟹ A^r ≥ B^r` for `r ∈ [0, 1]`.
pub fn check_loewner_heinz(a: &PositiveDefiniteMatrix, b: &PositiveDefiniteMatrix, r: f64, opts: &CheckOptions) -> Result<CheckOutcome> {
    unit_interval("r", r)?;
    check_same_dim(a.dim(), b.dim())?;
    require_loewner("A >= B", a, b, opts.psd_slack)?;
    let mut rec = pair(a, b, "loewner_heinz", opts)?;
    rec.param("r", r);
    let (ar, br) = (mat_power(a, r)?, mat_power(b, r)?);
    rec.loewner("power_monotone", ar.as_hermitian(), br.as_hermitian(), ar.spectrum().largest())?;
    Ok(rec.finish(Expectation::Holds))
}

/// `λ_1(A^{s/2}B^sA^{s/2}) ≤ λ_1(A^{1/2}BA^{1/2})^s` and
/// `A^{s/2}B^sA^{s/2} ≺_log (A^{1/2}BA^{1/2})^s` for `s ∈ [0, 1]`.
pub fn check_lambda1(a: &PositiveDefiniteMatrix, b: &PositiveDefiniteMatrix, s: f64, opts: &CheckOptions) -> Result<CheckOutcome> {
    unit_interval("s", s)?;
    let mut rec = pair(a, b, "lambda1", opts)?;
    rec.param("s", s);
    let lhs = mat_power(a, s / 2.0)?.sandwich(&mat_power(b, s)?)?;
    let rhs = mat_power(&mat_power(a, 0.5)?.sandwich(b)?, s)?;
    rec.claim("lambda1", rhs.spectrum().largest().ln() - lhs.spectrum().largest().ln());
    rec.log_majorized("log_majorization", &lhs, &rhs)?;
    Ok(rec.finish(Expectation::Holds))
}

/// The constructed witness satisfies the conjugacy identity, `U` is unitary, and
/// the two similar matrices share their spectrum.
pub fn check_similarity(a: &PositiveDefiniteMatrix, b: &PositiveDefiniteMatrix, t: Weight, opts: &CheckOptions) -> Result<CheckOutcome> {
    let mut rec = pair(a, b, "similarity", opts)?;
    rec.param("t", t.value());
    let w = similarity_witness(a, b, t)?;
    rec.bound("conjugacy", w.conjugacy_residual()?, SIMILARITY_TOL);
    rec.bound("unitary", w.unitarity_defect(), crate::linalg::UNITARY_TOL);
    let target = SpectralOperand::General(&w.target).spectrum()?;
    let reference = w.geometric.spectrum();
    let gap = target
        .values()
        .iter()
        .zip(reference.values())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
        / reference.largest();
    rec.bound("shared_spectrum", gap, SPECTRAL_IDENTITY_TOL);
    Ok(rec.finish(Expectation::Holds))
}

/// The published `s > min(1/t, 2)` counterexample: log majorization must fail,
/// and the printed matrices and spectra must be reproduced.
pub fn check_natlog_counterexample(opts: &CheckOptions) -> Result<CheckOutcome> {
    let c = NatlogCounterexample::compute()?;
    let mut rec = Recorder::new("natlog_counterexample", opts);
    rec.input("A", pd2(&NATLOG_A).as_matrix()).input("B", pd2(&NATLOG_B).as_matrix());
    rec.param("t", NATLOG_T).param("s", NATLOG_S);
    rec.log_majorized("araki<=natural", &c.lhs, &c.mean)?;
    rec.reproduce("lhs_spectrum", c.lhs_spectrum_delta, SPECTRUM_TOL);
    rec.reproduce("mean_spectrum", c.mean_spectrum_delta, SPECTRUM_TOL);
    rec.reproduce("lhs_entries", c.lhs_entry_delta, ENTRY_TOL);
    rec.reproduce("mean_entries", c.mean_entry_delta, ENTRY_TOL);
    Ok(rec.finish(Expectation::Fails))
}

/// `B1 ≥ B2` but `A♮_t B1 − A♮_t B2` has a negative eigenvalue.
pub fn check_spectral_not_monotone(opts: &CheckOptions) -> Result<CheckOutcome> {
    use super::fixtures::{LOEWNER_A, LOEWNER_B1, LOEWNER_B2, LOEWNER_T};
    let c = LoewnerCounterexample::compute()?;
    let mut rec = Recorder::new("spectral_not_monotone", opts);
    rec.input("A", pd2(&LOEWNER_A).as_matrix())
        .input("B1", pd2(&LOEWNER_B1).as_matrix())
        .input("B2", pd2(&LOEWNER_B2).as_matrix())
        .param("t", LOEWNER_T);
    rec.reproduce("B1>=B2", -c.order_gap, 0.0);
    rec.loewner("natural_monotone", c.mean1.as_hermitian(), c.mean2.as_hermitian(), c.mean1.spectrum().largest())?;
    rec.reproduce("mean1_entries", c.mean1_entry_delta, ENTRY_TOL);
    rec.reproduce("mean2_entries", c.mean2_entry_delta, ENTRY_TOL);
    rec.reproduce("difference_spectrum", c.diff_spectrum_delta, DIFF_SPECTRUM_TOL);
    Ok(rec.finish(Expectation::Fails))
}

/// Spectrum of a Hermitian matrix; re-exported for reporting.
pub fn eigenvalues(h: &HermitianMatrix) -> Result<Spectrum> {
    hermitian_eig(h).map(|(s, _)| s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::sample_pd;

    fn opts() -> CheckOptions {
        CheckOptions::default()
    }

    fn w(t: f64) -> Weight {
        Weight::new(t).unwrap()
    }

    fn diag(d: &[f64]) -> PositiveDefiniteMatrix {
        PositiveDefiniteMatrix::from_diagonal(d).unwrap()
    }

    fn random_pair(n: usize, seed: u64, spread: f64) -> (PositiveDefiniteMatrix, PositiveDefiniteMatrix) {
        (sample_pd(n, seed, spread).unwrap(), sample_pd(n, seed + 1000, spread).unwrap())
    }

    fn small_hermitian(n: usize, seed: u64) -> HermitianMatrix {
        let h = mat_log(&sample_pd(n, seed, 100.0).unwrap()).unwrap();
        let norm = h.spectral_norm().unwrap();
        h.scale(1.0 / norm)
    }

    #[test]
    fn geometric_power_trivial_and_random() {
        let (a, b) = random_pair(3, 1, 10.0);
        let out = check_geometric_power(&a, &b, w(0.4), 1.0, (0.5, 1.0), &opts()).unwrap();
        assert!(out.verdict);
        // r = 1: both directions are equalities
        assert!(out.detail[0].margin.abs() < 1e-10 && out.detail[1].margin.abs() < 1e-10);

        let out = check_geometric_power(&diag(&[1.0, 4.0, 9.0]), &diag(&[2.0, 3.0, 5.0]), w(0.3), 2.0, (1.0, 2.0), &opts()).unwrap();
        assert!(out.verdict && out.worst_margin.abs() < 1e-12);

        let out = check_geometric_power(&a, &b, w(0.4), 2.0, (1.0, 2.0), &opts()).unwrap();
        assert!(out.verdict, "{out:?}");
    }

    #[test]
    fn spectral_power_examples() {
        let (a, b) = random_pair(2, 7, 10.0);
        assert!(check_spectral_power(&a, &b, w(0.5), 3.0, (1.5, 3.0), &opts()).unwrap().verdict);
        assert!(check_spectral_power(&a, &b, w(0.5), 1.0, (0.5, 2.0), &opts()).unwrap().verdict);
        assert!(check_spectral_power(&a, &b, w(0.5), -1.0, (0.5, 2.0), &opts()).is_err());
        assert!(check_spectral_power(&a, &b, w(0.5), 1.0, (2.0, 0.5), &opts()).is_err());
    }

    #[test]
    fn natlog_examples_and_range() {
        let (a, b) = (diag(&[2.0, 5.0]), diag(&[3.0, 0.5]));
        let out = check_natlog(&a, &b, w(0.3), 1.0, false, &opts()).unwrap();
        assert!(out.verdict && out.worst_margin.abs() < 1e-12);

        let (a, b) = random_pair(4, 3, 20.0);
        assert!(check_natlog(&a, &b, w(0.6), 1.0, false, &opts()).unwrap().verdict);

        let (ca, cb) = (pd2(&NATLOG_A), pd2(&NATLOG_B));
        assert_eq!(
            check_natlog(&ca, &cb, w(NATLOG_T), NATLOG_S, false, &opts()).unwrap_err(),
            Error::SOutOfRange { s: 2.1, bound: 2.0 }
        );
        let forced = check_natlog(&ca, &cb, w(NATLOG_T), NATLOG_S, true, &opts()).unwrap();
        assert!(!forced.verdict);
        assert_eq!(forced.expected, Expectation::Exploratory);
        assert!(forced.witness.is_some());
    }

    #[test]
    fn chain_examples() {
        let a = sample_pd(3, 4, 10.0).unwrap();
        let out = check_chain(&a, &a, w(0.3), &opts()).unwrap();
        assert!(out.verdict && out.worst_margin.abs() < 1e-10);
        let b = sample_pd(3, 5, 10.0).unwrap();
        let out = check_chain(&a, &b, Weight::ZERO, &opts()).unwrap();
        assert!(out.verdict && out.worst_margin.abs() < 1e-10);
        let (a, b) = random_pair(4, 9, 100.0);
        assert!(check_chain(&a, &b, w(0.7), &opts()).unwrap().verdict);
    }

    #[test]
    fn trace_corollary_examples() {
        let zero = HermitianMatrix::zeros(3);
        let out = check_trace_corollary(&zero, &zero, w(0.5), &dyadic_grid(4), &opts()).unwrap();
        assert!(out.verdict && out.worst_margin.abs() < 1e-14);
        let (a, b) = (small_hermitian(4, 1), small_hermitian(4, 2));
        assert!(check_trace_corollary(&a, &b, w(0.4), &dyadic_grid(10), &opts()).unwrap().verdict);
        assert!(check_trace_corollary(&a, &b, w(0.4), &[0.5, 1.0], &opts()).is_err());
    }

    #[test]
    fn limit_examples() {
        let a = small_hermitian(3, 5);
        let out = check_limit_spectral(&a, &a, w(0.3), &dyadic_grid(10), &opts()).unwrap();
        assert!(out.verdict);
        let (_, errs) = limit_errors(&a, &a, w(0.3), &dyadic_grid(10), spectral_limit_term).unwrap();
        // roundoff in the mean is amplified by the 1/p power
        assert!(errs.iter().all(|e| *e < 1e-10), "{errs:?}");

        let (d1, d2) = (HermitianMatrix::from_diagonal(&[0.5, -0.2]), HermitianMatrix::from_diagonal(&[-0.7, 0.9]));
        for term in [spectral_limit_term, sandwich_limit_term] {
            let (_, errs) = limit_errors(&d1, &d2, w(0.6), &dyadic_grid(10), term).unwrap();
            assert!(errs.iter().all(|e| *e <= 1e-12), "{errs:?}");
        }

        let (a, b) = (small_hermitian(4, 11), small_hermitian(4, 12));
        let out = check_limit_spectral(&a, &b, w(0.5), &dyadic_grid(10), &opts()).unwrap();
        assert!(out.verdict, "{out:?}");
        let out = check_limit_sandwich(&a, &b, w(0.5), &dyadic_grid(10), &opts()).unwrap();
        assert!(out.verdict, "{out:?}");

        // t = 0: the sandwich term is e^{pA} powered back to e^A
        let out = check_limit_sandwich(&a, &b, Weight::ZERO, &dyadic_grid(6), &opts()).unwrap();
        assert!(out.verdict);
    }

    #[test]
    fn loewner_checks() {
        let (a, b) = random_pair(3, 21, 10.0);
        let out = check_loewner_monotone_geometric(&a, &b, &a, &b, w(0.4), &opts()).unwrap();
        assert!(out.verdict && out.worst_margin.abs() < 1e-10);

        let one = |v: f64| diag(&[v]);
        let out = check_loewner_monotone_geometric(&one(5.0), &one(3.0), &one(2.0), &one(1.0), w(0.25), &opts()).unwrap();
        assert!(out.verdict && out.worst_margin > 0.0);

        assert!(matches!(
            check_loewner_monotone_geometric(&one(1.0), &one(3.0), &one(2.0), &one(1.0), w(0.25), &opts()),
            Err(Error::PreconditionNotMet(_))
        ));

        let big = a.scale(2.0).unwrap();
        assert!(check_loewner_heinz(&big, &a, 0.5, &opts()).unwrap().verdict);
        assert!(check_loewner_heinz(&big, &a, 0.0, &opts()).unwrap().worst_margin.abs() < 1e-14);
        assert!(check_loewner_heinz(&a, &big, 0.5, &opts()).is_err());
        assert!(check_loewner_heinz(&big, &a, 1.5, &opts()).is_err());
    }

    #[test]
    fn lambda1_examples() {
        let (a, b) = random_pair(3, 31, 10.0);
        let out = check_lambda1(&a, &b, 1.0, &opts()).unwrap();
        assert!(out.verdict && out.worst_margin.abs() < 1e-10);
        let out = check_lambda1(&a, &b, 0.0, &opts()).unwrap();
        assert!(out.verdict && out.worst_margin.abs() < 1e-14);
        assert!(check_lambda1(&a, &b, 0.5, &opts()).unwrap().verdict);
    }

    #[test]
    fn similarity_examples() {
        let a = sample_pd(3, 41, 10.0).unwrap();
        assert!(check_similarity(&a, &a, w(0.3), &opts()).unwrap().verdict);
        let b = sample_pd(3, 42, 10.0).unwrap();
        assert!(check_similarity(&a, &b, Weight::HALF, &opts()).unwrap().verdict);
        assert!(check_similarity(&a, &b, w(0.3), &opts()).unwrap().verdict);
    }

    #[test]
    fn identities_and_spectral_properties() {
        let (a, b) = random_pair(4, 51, 100.0);
        let out = check_identities(&a, &b, w(0.3), w(0.2), w(0.9), &opts()).unwrap();
        assert!(out.verdict, "{out:?}");
        assert!(check_fiedler_ptak(&a, &b, &opts()).unwrap().verdict);
        assert!(check_det_homogeneity(&a, &b, w(0.7), &opts()).unwrap().verdict);
    }

    #[test]
    fn counterexamples_refute_their_claims() {
        let out = check_natlog_counterexample(&opts()).unwrap();
        assert!(!out.verdict && !out.is_violation(), "{out:?}");
        assert_eq!(out.detail[0].oracle_agrees, Some(true));
        let out = check_spectral_not_monotone(&opts()).unwrap();
        assert!(!out.verdict && !out.is_violation(), "{out:?}");
    }
}
