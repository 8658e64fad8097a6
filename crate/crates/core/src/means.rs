//! Weighted metric and spectral geometric means on the positive definite cone.
//!
//! * `A ♯_t B = A^{1/2} (A^{-1/2} B A^{-1/2})^t A^{1/2}` is the point at
//!   parameter `t` on the affine-invariant geodesic from `A` to `B`.
//! * `A ♮_t B = (A^{-1} ♯ B)^t A (A^{-1} ♯ B)^t` is the weighted spectral mean;
//!   for `t = 1/2` its eigenvalues are the square roots of those of `AB`.

use crate::error::{Error, Result};
use crate::linalg::{check_same_dim, max_abs, mat_power, CMatrix, PositiveDefiniteMatrix, UnitaryMatrix, UNITARY_TOL};

/// Relative residual allowed in the conjugacy identity of a [`SimilarityWitness`].
pub const SIMILARITY_TOL: f64 = 1e-8;

/// Interpolation parameter `t ∈ [0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Weight(f64);

impl Weight {
    pub const ZERO: Weight = Weight(0.0);
    pub const HALF: Weight = Weight(0.5);
    pub const ONE: Weight = Weight(1.0);

    pub fn new(t: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::InvalidWeight(t));
        }
        Ok(Weight(t))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// `1 − t`.
    pub fn complement(self) -> Weight {
        Weight(1.0 - self.0)
    }
}

impl TryFrom<f64> for Weight {
    type Error = Error;

    fn try_from(t: f64) -> Result<Self> {
        Weight::new(t)
    }
}

pub fn metric_mean(a: &PositiveDefiniteMatrix, b: &PositiveDefiniteMatrix, t: Weight) -> Result<PositiveDefiniteMatrix> {
    check_same_dim(a.dim(), b.dim())?;
    let a_half = mat_power(a, 0.5)?;
    let a_neg_half = mat_power(a, -0.5)?;
    let inner = b.congruence(a_neg_half.as_matrix())?;
    let powered = mat_power(&inner, t.value())?;
    a_half.sandwich(&powered)
}

/// `A ♯ B`, the unweighted metric mean.
pub fn geometric_mean(a: &PositiveDefiniteMatrix, b: &PositiveDefiniteMatrix) -> Result<PositiveDefiniteMatrix> {
    metric_mean(a, b, Weight::HALF)
}

pub fn spectral_mean(a: &PositiveDefiniteMatrix, b: &PositiveDefiniteMatrix, t: Weight) -> Result<PositiveDefiniteMatrix> {
    check_same_dim(a.dim(), b.dim())?;
    let c = geometric_mean(&a.inverse()?, b)?;
    mat_power(&c, t.value())?.sandwich(a)
}

/// `G_t = (A^{-1} ♯ B)^t`, the factor with `A ♮_t B = G_t A G_t`.
pub fn g_factor(a: &PositiveDefiniteMatrix, b: &PositiveDefiniteMatrix, t: Weight) -> Result<PositiveDefiniteMatrix> {
    check_same_dim(a.dim(), b.dim())?;
    mat_power(&geometric_mean(&a.inverse()?, b)?, t.value())
}

/// Constructive witness that `A ♯ B` is positively similar to
/// `(A ♮_{1-t} B)^{1/2} U (A ♮_t B)^{1/2}`.
///
/// With `G = G_t`, `N = A ♮_t B` and `M = B ♮_t A = A ♮_{1-t} B`:
/// `V = N^{-1/2} G`, `W = G M^{1/2}`, `R = VW`, `U = R^{-1} (RR*)^{1/2}`, and the
/// conjugator is `S = V* N^{1/2} = G`, so that `target = S^{-1} (A ♯ B) S`.
#[derive(Debug, Clone)]
pub struct SimilarityWitness {
    pub conjugator: PositiveDefiniteMatrix,
    pub rotator: UnitaryMatrix,
    pub target: CMatrix,
    pub geometric: PositiveDefiniteMatrix,
    pub v: CMatrix,
    pub w: CMatrix,
    pub r: CMatrix,
}

impl SimilarityWitness {
    /// `‖S^{-1}(A♯B)S − target‖_max / ‖A♯B‖_max`.
    pub fn conjugacy_residual(&self) -> Result<f64> {
        let s = self.conjugator.as_matrix();
        let s_inv = self.conjugator.inverse()?;
        let conj = s_inv.as_matrix() * self.geometric.as_matrix() * s;
        Ok(max_abs(&(conj - &self.target)) / max_abs(self.geometric.as_matrix()))
    }

    pub fn unitarity_defect(&self) -> f64 {
        self.rotator.defect()
    }

    pub fn is_valid(&self) -> Result<bool> {
        Ok(self.conjugacy_residual()? <= SIMILARITY_TOL && self.unitarity_defect() <= UNITARY_TOL)
    }
}

pub fn similarity_witness(a: &PositiveDefiniteMatrix, b: &PositiveDefiniteMatrix, t: Weight) -> Result<SimilarityWitness> {
    check_same_dim(a.dim(), b.dim())?;
    let g = g_factor(a, b, t)?;
    let n_mean = spectral_mean(a, b, t)?;
    let m_mean = spectral_mean(b, a, t)?;
    let n_neg_half = mat_power(&n_mean, -0.5)?;
    let n_half = mat_power(&n_mean, 0.5)?;
    let m_half = mat_power(&m_mean, 0.5)?;

    let v = n_neg_half.as_matrix() * g.as_matrix();
    let w = g.as_matrix() * m_half.as_matrix();
    let r = &v * &w;
    // R^{-1}(RR*)^{1/2} is the adjoint of the polar factor of R; with R = XΣY* it is YX*.
    let svd = crate::linalg::jacobi_svd(&r)?;
    if svd.singular_values.last().copied().unwrap_or(0.0) <= f64::EPSILON * svd.singular_values[0] {
        return Err(Error::NumericBreakdown("R is not invertible"));
    }
    let u = UnitaryMatrix::new(&svd.v * svd.u.adjoint())
        .map_err(|_| Error::NumericBreakdown("polar factor lost unitarity"))?;
    let target = m_half.as_matrix() * u.as_matrix() * n_half.as_matrix();

    Ok(SimilarityWitness {
        conjugator: g,
        rotator: u,
        target,
        geometric: geometric_mean(a, b)?,
        v,
        w,
        r,
    })
}
