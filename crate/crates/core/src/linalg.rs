//! Dense Hermitian linear algebra over `Complex<f64>`.
//!
//! Everything downstream is built from a single primitive: the Hermitian
//! eigendecomposition. Matrix functions of Hermitian and positive definite
//! arguments are evaluated spectrally as `U diag(f(λ)) U*`, and every result is
//! re-Hermitized before it is wrapped in a typed value.
//!
//! A [`PositiveDefiniteMatrix`] keeps the eigendecomposition it was validated
//! with. Functions of it reuse that decomposition instead of decomposing the
//! (possibly much worse conditioned) result again, so `P^r` keeps the full
//! relative accuracy of `λ(P)^r` even when `r` is large.

use itertools::Itertools;
use nalgebra::{Complex, DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;

/// Hermitian defect allowed on construction, absolute plus relative to `‖X‖_max`.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Allowed `‖UU* − I‖_max`.
pub const UNITARY_TOL: f64 = 1e-10;
/// Reconstruction residual of [`hermitian_eig`], relative to `‖H‖_max`.
pub const RECON_TOL: f64 = 1e-10;
/// Relative floor `λ_n > PD_FLOOR · λ_1` for positive definiteness.
pub const PD_FLOOR: f64 = 1e-12;

const EIG_EPS: f64 = f64::EPSILON;
const EIG_MAX_ITER: usize = 10_000;

pub fn c64(re: f64) -> C64 {
    Complex::new(re, 0.0)
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `(X + X*) / 2`.
pub fn hermitize(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()) * c64(0.5)
}

pub fn hermitian_defect(m: &CMatrix) -> f64 {
    max_abs(&(m - m.adjoint()))
}

pub fn unitary_defect(m: &CMatrix) -> f64 {
    let n = m.nrows();
    max_abs(&(m * m.adjoint() - CMatrix::identity(n, n)))
}

/// Largest singular value.
pub fn spectral_norm(m: &CMatrix) -> f64 {
    jacobi_svd(m).map(|svd| svd.singular_values.first().copied().unwrap_or(0.0)).unwrap_or(f64::NAN)
}

/// `M = U diag(σ) V*` with `σ` sorted descending.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: CMatrix,
    pub singular_values: Vec<f64>,
    pub v: CMatrix,
}

const JACOBI_MAX_SWEEPS: usize = 80;

/// One-sided (Hestenes) Jacobi SVD of a square matrix.
///
/// Columns of `M` are rotated until pairwise orthogonal, `M V = W`; then
/// `σ_j = ‖w_j‖` and `u_j = w_j / σ_j`. Small singular values keep high
/// relative accuracy. Columns of `U` for zero singular values are zero.
pub fn jacobi_svd(m: &CMatrix) -> Result<Svd> {
    let n = check_square(m)?;
    if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NonFinite);
    }
    let mut w = m.clone();
    let mut v = CMatrix::identity(n, n);
    let tol = f64::EPSILON * n as f64;
    let mut converged = n < 2;
    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let a: f64 = w.column(p).iter().map(|z| z.norm_sqr()).sum();
                let b: f64 = w.column(q).iter().map(|z| z.norm_sqr()).sum();
                let c: C64 = w.column(p).iter().zip(w.column(q).iter()).map(|(x, y)| x.conj() * y).sum();
                let off = c.norm();
                if off == 0.0 || off <= tol * (a * b).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = (c / off).conj();
                let zeta = (b - a) / (2.0 * off);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = cs * t;
                for mat in [&mut w, &mut v] {
                    for i in 0..n {
                        let xp = mat[(i, p)];
                        let xq = mat[(i, q)] * phase;
                        mat[(i, p)] = xp * cs - xq * sn;
                        mat[(i, q)] = xp * sn + xq * cs;
                    }
                }
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::EigFailure);
    }
    let norms: Vec<f64> = (0..n).map(|j| w.column(j).norm()).collect();
    let order: Vec<usize> = (0..n).sorted_by(|&i, &j| norms[j].total_cmp(&norms[i])).collect();
    let singular_values: Vec<f64> = order.iter().map(|&j| norms[j]).collect();
    let u = CMatrix::from_fn(n, n, |i, k| {
        let j = order[k];
        if norms[j] > 0.0 { w[(i, j)] / c64(norms[j]) } else { c64(0.0) }
    });
    let v = CMatrix::from_fn(n, n, |i, k| v[(i, order[k])]);
    Ok(Svd { u, singular_values, v })
}

fn check_square(m: &CMatrix) -> Result<usize> {
    if m.nrows() != m.ncols() {
        return Err(Error::NotSquare { rows: m.nrows(), cols: m.ncols() });
    }
    if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NonFinite);
    }
    Ok(m.nrows())
}

pub fn check_same_dim(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(Error::DimensionMismatch { left, right });
    }
    Ok(())
}

/// Real eigenvalues sorted in descending order.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum(Vec<f64>);

impl Spectrum {
    /// Sorts the values descending (stable on ties). Rejects NaN and infinities.
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        values.sort_by(|a, b| b.total_cmp(a));
        Ok(Spectrum(values))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn largest(&self) -> f64 {
        self.0[0]
    }

    pub fn smallest(&self) -> f64 {
        self.0[self.0.len() - 1]
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    /// `Σ log λ_i`, i.e. the log-determinant for a positive spectrum.
    pub fn log_product(&self) -> f64 {
        self.0.iter().map(|v| v.ln()).sum()
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Result<Spectrum> {
        Spectrum::new(self.0.iter().map(|&v| f(v)).collect())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix(CMatrix);

impl HermitianMatrix {
    /// Validates squareness and the Hermitian invariant, then stores `(X + X*)/2`.
    pub fn new(m: CMatrix) -> Result<Self> {
        check_square(&m)?;
        let defect = hermitian_defect(&m);
        if defect > HERMITIAN_TOL * (1.0 + max_abs(&m)) {
            return Err(Error::NonHermitianInput { defect });
        }
        Ok(HermitianMatrix(hermitize(&m)))
    }

    /// Row-major real entries.
    pub fn from_real(n: usize, data: &[f64]) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::LengthMismatch { left: data.len(), right: n * n });
        }
        Self::new(CMatrix::from_row_iterator(n, n, data.iter().map(|&v| c64(v))))
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        HermitianMatrix(CMatrix::from_fn(n, n, |i, j| if i == j { c64(diag[i]) } else { c64(0.0) }))
    }

    pub fn zeros(n: usize) -> Self {
        HermitianMatrix(CMatrix::zeros(n, n))
    }

    pub fn identity(n: usize) -> Self {
        HermitianMatrix(CMatrix::identity(n, n))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn as_matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> CMatrix {
        self.0
    }

    pub fn scale(&self, alpha: f64) -> Self {
        HermitianMatrix(&self.0 * c64(alpha))
    }

    /// `alpha·self + beta·other`.
    pub fn combine(&self, alpha: f64, other: &HermitianMatrix, beta: f64) -> Result<Self> {
        check_same_dim(self.dim(), other.dim())?;
        Ok(HermitianMatrix(&self.0 * c64(alpha) + &other.0 * c64(beta)))
    }

    pub fn spectrum(&self) -> Result<Spectrum> {
        hermitian_eig(self).map(|(s, _)| s)
    }

    /// `max |λ_i|`.
    pub fn spectral_norm(&self) -> Result<f64> {
        let s = self.spectrum()?;
        Ok(s.largest().abs().max(s.smallest().abs()))
    }

    pub fn trace(&self) -> f64 {
        self.0.trace().re
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryMatrix(CMatrix);

impl UnitaryMatrix {
    pub fn new(m: CMatrix) -> Result<Self> {
        check_square(&m)?;
        let defect = unitary_defect(&m);
        if defect > UNITARY_TOL {
            return Err(Error::NonUnitary { defect });
        }
        Ok(UnitaryMatrix(m))
    }

    pub fn identity(n: usize) -> Self {
        UnitaryMatrix(CMatrix::identity(n, n))
    }

    pub fn as_matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn defect(&self) -> f64 {
        unitary_defect(&self.0)
    }
}

/// Hermitian matrix with `λ_n > PD_FLOOR · λ_1 > 0`, carrying its eigendecomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct PositiveDefiniteMatrix {
    matrix: HermitianMatrix,
    spectrum: Spectrum,
    vectors: CMatrix,
}

fn check_pd_floor(spectrum: &Spectrum) -> Result<()> {
    let (max, min) = (spectrum.largest(), spectrum.smallest());
    if !(max > 0.0) || !(min > PD_FLOOR * max) {
        return Err(Error::NonPositiveSpectrum { min, max });
    }
    Ok(())
}

impl PositiveDefiniteMatrix {
    pub fn new(h: HermitianMatrix) -> Result<Self> {
        let (spectrum, vectors) = hermitian_eig(&h)?;
        check_pd_floor(&spectrum)?;
        Ok(PositiveDefiniteMatrix { matrix: h, spectrum, vectors: vectors.0 })
    }

    /// Hermitizes `m` (after the Hermitian check) and validates positivity.
    pub fn from_matrix(m: CMatrix) -> Result<Self> {
        Self::new(HermitianMatrix::new(m)?)
    }

    pub fn from_real(n: usize, data: &[f64]) -> Result<Self> {
        Self::new(HermitianMatrix::from_real(n, data)?)
    }

    pub fn from_diagonal(diag: &[f64]) -> Result<Self> {
        Self::new(HermitianMatrix::from_diagonal(diag))
    }

    pub fn identity(n: usize) -> Self {
        PositiveDefiniteMatrix {
            matrix: HermitianMatrix::identity(n),
            spectrum: Spectrum(vec![1.0; n]),
            vectors: CMatrix::identity(n, n),
        }
    }

    /// Builds `U diag(values) U*` from an orthonormal eigenbasis, keeping `values`
    /// as the spectrum instead of recomputing it.
    pub(crate) fn from_eigenpairs(vectors: &CMatrix, values: &[f64]) -> Result<Self> {
        let n = values.len();
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        let order: Vec<usize> = (0..n).sorted_by(|&i, &j| values[j].total_cmp(&values[i])).collect();
        let sorted: Vec<f64> = order.iter().map(|&i| values[i]).collect();
        let spectrum = Spectrum(sorted);
        check_pd_floor(&spectrum)?;
        let permuted = CMatrix::from_fn(n, n, |i, j| vectors[(i, order[j])]);
        let matrix = HermitianMatrix(hermitize(&reconstruct(&permuted, spectrum.values())));
        Ok(PositiveDefiniteMatrix { matrix, spectrum, vectors: permuted })
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn as_hermitian(&self) -> &HermitianMatrix {
        &self.matrix
    }

    pub fn as_matrix(&self) -> &CMatrix {
        self.matrix.as_matrix()
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    pub fn eigenvectors(&self) -> &CMatrix {
        &self.vectors
    }

    pub fn scale(&self, alpha: f64) -> Result<Self> {
        if !(alpha > 0.0) {
            return Err(Error::InvalidParameter(format!("scale factor {alpha} must be positive")));
        }
        let values: Vec<f64> = self.spectrum.values().iter().map(|v| v * alpha).collect();
        Self::from_eigenpairs(&self.vectors, &values)
    }

    pub fn determinant(&self) -> f64 {
        self.spectrum.values().iter().product()
    }

    pub fn log_determinant(&self) -> f64 {
        self.spectrum.log_product()
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace()
    }

    pub fn inverse(&self) -> Result<Self> {
        mat_power(self, -1.0)
    }

    /// `X · self · X*`, re-Hermitized and revalidated.
    /// `X P X*` for square `X`, formed as `Y Y*` with `Y = X Q Λ^{1/2}`. The
    /// eigenpairs come from the SVD of `Y`, so small eigenvalues keep relative
    /// accuracy of order `ε·κ(Y)` rather than `ε·κ(Y)²`.
    pub fn congruence(&self, x: &CMatrix) -> Result<Self> {
        check_same_dim(self.dim(), x.ncols())?;
        check_same_dim(x.nrows(), x.ncols())?;
        // Y* = Λ^{1/2} Q* X*; its Jacobi right vectors are eigenvectors of Y Y*.
        let mut y_adj = (x * &self.vectors).adjoint();
        for (i, lambda) in self.spectrum.values().iter().enumerate() {
            let root = lambda.sqrt();
            for j in 0..y_adj.ncols() {
                y_adj[(i, j)] *= root;
            }
        }
        let svd = jacobi_svd(&y_adj)?;
        let values: Vec<f64> = svd.singular_values.iter().map(|s| s * s).collect();
        let u = svd.v;
        Self::from_eigenpairs(&u, &values)
    }

    /// `self · other · self`, the congruence by a positive definite factor.
    pub fn sandwich(&self, other: &PositiveDefiniteMatrix) -> Result<Self> {
        other.congruence(self.as_matrix())
    }
}

fn reconstruct(vectors: &CMatrix, values: &[f64]) -> CMatrix {
    let mut scaled = vectors.clone();
    for (j, &v) in values.iter().enumerate() {
        scaled.column_mut(j).scale_mut(v);
    }
    scaled * vectors.adjoint()
}

/// Eigendecomposition `H = U diag(λ) U*` with `λ` descending.
pub fn hermitian_eig(h: &HermitianMatrix) -> Result<(Spectrum, UnitaryMatrix)> {
    let n = h.dim();
    if n == 0 {
        return Ok((Spectrum(Vec::new()), UnitaryMatrix(CMatrix::zeros(0, 0))));
    }
    let eig = SymmetricEigen::try_new(h.as_matrix().clone(), EIG_EPS, EIG_MAX_ITER).ok_or(Error::EigFailure)?;
    let order: Vec<usize> = (0..n)
        .sorted_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]))
        .collect();
    let values: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::EigFailure);
    }
    let vectors = CMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
    if max_abs(&(reconstruct(&vectors, &values) - h.as_matrix())) > RECON_TOL * max_abs(h.as_matrix()).max(f64::MIN_POSITIVE) {
        return Err(Error::EigFailure);
    }
    Ok((Spectrum(values), UnitaryMatrix(vectors)))
}

/// Applies `f` to the spectrum of a Hermitian matrix.
pub fn hermitian_function(h: &HermitianMatrix, f: impl Fn(f64) -> f64) -> Result<CMatrix> {
    let (spectrum, vectors) = hermitian_eig(h)?;
    let values: Vec<f64> = spectrum.values().iter().map(|&v| f(v)).collect();
    Ok(hermitize(&reconstruct(vectors.as_matrix(), &values)))
}

/// Fractional power `P^r = U diag(λ^r) U*`. `r = 0` returns the identity exactly.
pub fn mat_power(p: &PositiveDefiniteMatrix, r: f64) -> Result<PositiveDefiniteMatrix> {
    if !r.is_finite() {
        return Err(Error::InvalidParameter(format!("exponent {r} is not finite")));
    }
    if r == 0.0 {
        return Ok(PositiveDefiniteMatrix::identity(p.dim()));
    }
    let values: Vec<f64> = p.spectrum.values().iter().map(|v| v.powf(r)).collect();
    PositiveDefiniteMatrix::from_eigenpairs(&p.vectors, &values)
}

pub fn mat_exp(h: &HermitianMatrix) -> Result<PositiveDefiniteMatrix> {
    let (spectrum, vectors) = hermitian_eig(h)?;
    let values: Vec<f64> = spectrum.values().iter().map(|v| v.exp()).collect();
    PositiveDefiniteMatrix::from_eigenpairs(vectors.as_matrix(), &values)
}

pub fn mat_log(p: &PositiveDefiniteMatrix) -> Result<HermitianMatrix> {
    let values: Vec<f64> = p.spectrum.values().iter().map(|v| v.ln()).collect();
    Ok(HermitianMatrix(hermitize(&reconstruct(&p.vectors, &values))))
}

/// Number of `k`-subsets of an `n`-set.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k.min(n - k)).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// `k`-th compound matrix: the `k×k` minors of `m`, rows and columns indexed by
/// `k`-subsets in lexicographic order.
pub fn compound(m: &CMatrix, k: usize) -> Result<CMatrix> {
    let n = check_square(m)?;
    if k == 0 || k > n {
        return Err(Error::BadOrder { k, n });
    }
    // LU determinants; the closed-form small-matrix formulas cancel badly when ill-conditioned
    let subsets: Vec<Vec<usize>> = (0..n).combinations(k).collect();
    let size = subsets.len();
    let mut out = CMatrix::zeros(size, size);
    for (a, rows) in subsets.iter().enumerate() {
        for (b, cols) in subsets.iter().enumerate() {
            let minor = CMatrix::from_fn(k, k, |i, j| m[(rows[i], cols[j])]);
            out[(a, b)] = minor.lu().determinant();
        }
    }
    Ok(out)
}

/// Haar-distributed unitary from a complex Ginibre draw, phases fixed so the
/// distribution is exactly Haar.
pub fn haar_unitary(n: usize, rng: &mut impl Rng) -> CMatrix {
    let z = CMatrix::from_fn(n, n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex::new(re, im) * c64(std::f64::consts::FRAC_1_SQRT_2)
    });
    let qr = z.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / c64(d.norm()) } else { c64(1.0) };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Seeded random positive definite matrix `Q diag(λ) Q*` with Haar `Q` and
/// `λ_i` log-uniform on `[1/spread, spread]`.
pub fn sample_pd(n: usize, seed: u64, spread: f64) -> Result<PositiveDefiniteMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_pd_with(n, spread, &mut rng)
}

pub fn sample_pd_with(n: usize, spread: f64, rng: &mut impl Rng) -> Result<PositiveDefiniteMatrix> {
    if n == 0 {
        return Err(Error::InvalidParameter("dimension must be at least 1".into()));
    }
    if !(spread >= 1.0) || !spread.is_finite() {
        return Err(Error::InvalidParameter(format!("spread {spread} must be a finite value >= 1")));
    }
    let q = haar_unitary(n, rng);
    if spread == 1.0 {
        return Ok(PositiveDefiniteMatrix::identity(n));
    }
    let half = spread.ln();
    let values: Vec<f64> = (0..n).map(|_| rng.random_range(-half..=half).exp()).collect();
    PositiveDefiniteMatrix::from_eigenpairs(&q, &values)
}

/// Smallest eigenvalue of `a − b`, used for Löwner-order tests.
pub fn loewner_gap(a: &HermitianMatrix, b: &HermitianMatrix) -> Result<f64> {
    Ok(a.combine(1.0, b, -1.0)?.spectrum()?.smallest())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn random_hermitian(n: usize, seed: u64) -> HermitianMatrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let z = CMatrix::from_fn(n, n, |_, _| {
            Complex::new(rng.sample::<f64, _>(StandardNormal), rng.sample::<f64, _>(StandardNormal))
        });
        HermitianMatrix::new(hermitize(&z)).unwrap()
    }

    #[test]
    fn eig_of_identity_and_diagonal() {
        let (s, u) = hermitian_eig(&HermitianMatrix::identity(3)).unwrap();
        assert_eq!(s.values(), &[1.0, 1.0, 1.0]);
        assert!(u.defect() < UNITARY_TOL);

        let (s, _) = hermitian_eig(&HermitianMatrix::from_diagonal(&[1.0, 5.0, 2.0])).unwrap();
        assert_eq!(s.values(), &[5.0, 2.0, 1.0]);
    }

    #[test]
    fn eig_reconstructs() {
        for seed in 0..20 {
            let h = random_hermitian(1 + (seed as usize % 6), seed);
            let (s, u) = hermitian_eig(&h).unwrap();
            let back = reconstruct(u.as_matrix(), s.values());
            assert!(max_abs(&(back - h.as_matrix())) <= RECON_TOL * max_abs(h.as_matrix()));
            assert!(s.values().windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn non_hermitian_is_rejected() {
        let m = CMatrix::from_row_slice(2, 2, &[c64(1.0), c64(2.0), c64(0.0), c64(1.0)]);
        assert!(matches!(HermitianMatrix::new(m), Err(Error::NonHermitianInput { .. })));
        let rect = CMatrix::zeros(2, 3);
        assert!(matches!(HermitianMatrix::new(rect), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn pd_floor_is_relative() {
        assert!(PositiveDefiniteMatrix::from_diagonal(&[1.0, 1e-11]).is_ok());
        assert!(matches!(
            PositiveDefiniteMatrix::from_diagonal(&[1.0, 1e-13]),
            Err(Error::NonPositiveSpectrum { .. })
        ));
        assert!(PositiveDefiniteMatrix::from_diagonal(&[1.0, -1.0]).is_err());
    }

    #[test]
    fn power_diagonal_and_zero() {
        let p = PositiveDefiniteMatrix::from_diagonal(&[4.0, 9.0]).unwrap();
        let half = mat_power(&p, 0.5).unwrap();
        assert!((half.as_matrix()[(0, 0)].re - 2.0).abs() < 1e-15);
        assert!((half.as_matrix()[(1, 1)].re - 3.0).abs() < 1e-15);
        let zero = mat_power(&sample_pd(4, 3, 50.0).unwrap(), 0.0).unwrap();
        assert_eq!(zero.as_matrix(), &CMatrix::identity(4, 4));
    }

    #[test]
    fn power_matches_composed_oracle() {
        // P^2.5 = P · P · P^0.5
        let p = sample_pd(3, 11, 10.0).unwrap();
        let direct = mat_power(&p, 2.5).unwrap();
        let oracle = p.as_matrix() * p.as_matrix() * mat_power(&p, 0.5).unwrap().as_matrix();
        let rel = max_abs(&(direct.as_matrix() - &oracle)) / max_abs(&oracle);
        assert!(rel < 1e-10, "{rel}");
    }

    #[test]
    fn power_overflowing_floor_errors() {
        let p = PositiveDefiniteMatrix::from_diagonal(&[1e3, 1.0]).unwrap();
        assert!(matches!(mat_power(&p, 5.0), Err(Error::NonPositiveSpectrum { .. })));
    }

    #[test]
    fn exp_log_trivial() {
        let e = mat_exp(&HermitianMatrix::zeros(3)).unwrap();
        assert!(max_abs(&(e.as_matrix() - CMatrix::identity(3, 3))) < 1e-15);
        let e1 = std::f64::consts::E;
        let l = mat_log(&PositiveDefiniteMatrix::from_diagonal(&[e1, e1 * e1]).unwrap()).unwrap();
        assert!((l.as_matrix()[(0, 0)].re - 1.0).abs() < 1e-15);
        assert!((l.as_matrix()[(1, 1)].re - 2.0).abs() < 1e-15);
    }

    #[test]
    fn compound_trivial_cases() {
        let id = compound(&CMatrix::identity(3, 3), 2).unwrap();
        assert_eq!(id, CMatrix::identity(3, 3));
        let d = HermitianMatrix::from_diagonal(&[3.0, 2.0, 1.0]);
        let c = compound(d.as_matrix(), 2).unwrap();
        // subsets {0,1}, {0,2}, {1,2}
        let expected = HermitianMatrix::from_diagonal(&[6.0, 3.0, 2.0]);
        assert!(max_abs(&(c - expected.as_matrix())) < 1e-14);
    }

    #[test]
    fn compound_bad_order() {
        let m = CMatrix::identity(3, 3);
        assert_eq!(compound(&m, 0), Err(Error::BadOrder { k: 0, n: 3 }));
        assert_eq!(compound(&m, 4), Err(Error::BadOrder { k: 4, n: 3 }));
    }

    #[test]
    fn compound_largest_eigenvalue_is_prefix_product() {
        let p = sample_pd(3, 5, 20.0).unwrap();
        let c = compound(p.as_matrix(), 2).unwrap();
        let top = HermitianMatrix::new(c).unwrap().spectrum().unwrap().largest();
        let v = p.spectrum().values();
        assert!((top / (v[0] * v[1]) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 3), 20);
        assert_eq!(binomial(5, 0), 1);
        assert_eq!(binomial(2, 3), 0);
    }

    #[test]
    fn sample_pd_contract() {
        let id = sample_pd(2, 7, 1.0).unwrap();
        assert_eq!(id.as_matrix(), &CMatrix::identity(2, 2));
        assert_eq!(sample_pd(3, 42, 100.0).unwrap(), sample_pd(3, 42, 100.0).unwrap());
        let p = sample_pd(4, 1, 100.0).unwrap();
        let recomputed = p.as_hermitian().spectrum().unwrap();
        assert!(recomputed.smallest() > PD_FLOOR * recomputed.largest());
        assert!(p.spectrum().largest() <= 100.0 && p.spectrum().smallest() >= 0.01);
        assert!(sample_pd(0, 1, 2.0).is_err());
        assert!(sample_pd(2, 1, 0.5).is_err());
    }

    #[test]
    fn spectrum_rejects_nan() {
        assert_eq!(Spectrum::new(vec![1.0, f64::NAN]), Err(Error::NonFinite));
        assert_eq!(Spectrum::new(vec![1.0, 3.0, 2.0]).unwrap().values(), &[3.0, 2.0, 1.0]);
    }

    #[test]
    fn jacobi_svd_factorizes() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 1..7 {
            let m = CMatrix::from_fn(n, n, |_, _| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
            let svd = jacobi_svd(&m).unwrap();
            let s = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(n, svd.singular_values.iter().map(|&x| c64(x))));
            assert!(max_abs(&(&svd.u * s * svd.v.adjoint() - &m)) < 1e-13);
            assert!(unitary_defect(&svd.u) < 1e-13 && unitary_defect(&svd.v) < 1e-13);
            assert!(svd.singular_values.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn jacobi_svd_handles_tiny_offdiagonal_entries() {
        // permuted diagonal with ~1e-16 and ~1e-32 clutter
        let mut y = CMatrix::zeros(3, 3);
        y[(0, 2)] = c64(1.0717734625362938);
        y[(1, 1)] = c64(1.943283315726148);
        y[(2, 0)] = c64(2.2469530824002306);
        y[(0, 0)] = c64(5.4e-17);
        y[(0, 1)] = c64(3.9e-16);
        y[(1, 0)] = c64(-2.6e-32);
        y[(1, 2)] = c64(1.9e-16);
        y[(2, 1)] = c64(-1.7e-32);
        y[(2, 2)] = c64(1.8e-17);
        let svd = jacobi_svd(&y).unwrap();
        let s = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(3, svd.singular_values.iter().map(|&x| c64(x))));
        assert!(max_abs(&(&svd.u * s * svd.v.adjoint() - &y)) < 1e-15);
        let expected = [2.2469530824002306, 1.943283315726148, 1.0717734625362938];
        for (got, want) in svd.singular_values.iter().zip(expected) {
            assert!((got - want).abs() < 1e-15);
        }
    }

    #[test]
    fn congruence_keeps_small_eigenvalues() {
        // X P X* with X = diag(1, 1e-4), P = I: eigenvalues 1 and 1e-8 to full relative precision
        let x = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c64(1.0), c64(1e-4)]));
        let u = haar_unitary(2, &mut ChaCha8Rng::seed_from_u64(2));
        let xr = &u * x * u.adjoint();
        let c = PositiveDefiniteMatrix::identity(2).congruence(&xr).unwrap();
        assert!((c.spectrum().smallest() / 1e-8 - 1.0).abs() < 1e-10);
    }
}
