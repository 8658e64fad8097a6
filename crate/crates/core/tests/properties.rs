mod common;

use common::{max_abs, rel_diff};
use geomeans::linalg::{compound, mat_power, sample_pd, CMatrix, PositiveDefiniteMatrix, Spectrum};
use geomeans::majorization::{
    compound_cross_check, eig_log_majorizes, log_majorizes, majorizes, weak_majorizes, MAJORIZATION_TOL,
};
use geomeans::means::{geometric_mean, metric_mean, spectral_mean, Weight};
use proptest::prelude::*;

fn pair() -> impl Strategy<Value = (PositiveDefiniteMatrix, PositiveDefiniteMatrix)> {
    (2usize..=5, any::<u64>(), 1.0f64..30.0).prop_map(|(n, seed, spread)| {
        (sample_pd(n, seed, spread).unwrap(), sample_pd(n, seed.wrapping_add(1), spread).unwrap())
    })
}

fn weight() -> impl Strategy<Value = Weight> {
    (0.0f64..=1.0).prop_map(|t| Weight::new(t).unwrap())
}

fn spectrum(len: usize) -> impl Strategy<Value = Spectrum> {
    prop::collection::vec(0.01f64..100.0, len).prop_map(|v| Spectrum::new(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn powers_compose((a, _) in pair(), r in -2.0f64..2.0, s in -2.0f64..2.0) {
        let lhs = mat_power(&mat_power(&a, r).unwrap(), s).unwrap();
        let rhs = mat_power(&a, r * s).unwrap();
        prop_assert!(rel_diff(lhs.as_matrix(), rhs.as_matrix()) < 1e-9);
        let prod = mat_power(&a, r).unwrap().as_matrix() * mat_power(&a, s).unwrap().as_matrix();
        prop_assert!(rel_diff(&prod, mat_power(&a, r + s).unwrap().as_matrix()) < 1e-9);
    }

    #[test]
    fn cached_spectrum_reconstructs((a, _) in pair()) {
        let d = common::diag(a.spectrum().values());
        let v = a.eigenvectors();
        prop_assert!(rel_diff(&(v * d * v.adjoint()), a.as_matrix()) < 1e-12);
    }

    #[test]
    fn means_hit_endpoints((a, b) in pair()) {
        for mean in [metric_mean, spectral_mean] {
            prop_assert!(rel_diff(mean(&a, &b, Weight::ZERO).unwrap().as_matrix(), a.as_matrix()) < 1e-9);
            prop_assert!(rel_diff(mean(&a, &b, Weight::ONE).unwrap().as_matrix(), b.as_matrix()) < 1e-9);
        }
    }

    #[test]
    fn means_are_jointly_homogeneous((a, b) in pair(), t in weight(), alpha in 0.1f64..10.0, beta in 0.1f64..10.0) {
        let factor = alpha.powf(1.0 - t.value()) * beta.powf(t.value());
        for mean in [metric_mean, spectral_mean] {
            let scaled = mean(&a.scale(alpha).unwrap(), &b.scale(beta).unwrap(), t).unwrap();
            let reference = mean(&a, &b, t).unwrap().as_matrix() * geomeans::linalg::c64(factor);
            prop_assert!(rel_diff(scaled.as_matrix(), &reference) < 1e-9);
        }
    }

    #[test]
    fn metric_mean_symmetries((a, b) in pair(), t in weight()) {
        let forward = metric_mean(&a, &b, t).unwrap();
        let backward = metric_mean(&b, &a, t.complement()).unwrap();
        prop_assert!(rel_diff(forward.as_matrix(), backward.as_matrix()) < 1e-9);
        let g = geometric_mean(&a, &b).unwrap();
        // G A^{-1} G = B
        let back = a.inverse().unwrap().congruence(g.as_matrix()).unwrap();
        prop_assert!(rel_diff(back.as_matrix(), b.as_matrix()) < 1e-9);
    }

    #[test]
    fn metric_mean_is_log_majorized_by_spectral_mean((a, b) in pair(), t in weight()) {
        let sharp = metric_mean(&a, &b, t).unwrap();
        let natural = spectral_mean(&a, &b, t).unwrap();
        prop_assert!(eig_log_majorizes(&sharp, &natural, 1e-8).unwrap().verdict);
        if a.dim() <= 4 {
            prop_assert!(compound_cross_check(&sharp, &natural, 1e-8).unwrap());
        }
    }

    #[test]
    fn determinants_of_means((a, b) in pair(), t in weight()) {
        let expected = (1.0 - t.value()) * a.log_determinant() + t.value() * b.log_determinant();
        for mean in [metric_mean, spectral_mean] {
            prop_assert!((mean(&a, &b, t).unwrap().log_determinant() - expected).abs() < 1e-9);
        }
    }

    #[test]
    fn compound_is_multiplicative_on_pd((a, b) in pair(), k in 1usize..=5) {
        let k = k.min(a.dim());
        let lhs = compound(&(a.as_matrix() * b.as_matrix()), k).unwrap();
        let rhs = compound(a.as_matrix(), k).unwrap() * compound(b.as_matrix(), k).unwrap();
        prop_assert!(max_abs(&(lhs - &rhs)) <= 1e-10 * max_abs(&rhs));
    }

    #[test]
    fn majorization_is_reflexive_and_permutation_invariant(x in spectrum(5), shift in 0usize..5) {
        prop_assert!(majorizes(&x, &x, MAJORIZATION_TOL).unwrap().verdict);
        prop_assert!(log_majorizes(&x, &x, MAJORIZATION_TOL).unwrap().verdict);
        let mut rotated = x.values().to_vec();
        rotated.rotate_left(shift);
        let rotated = Spectrum::new(rotated).unwrap();
        prop_assert_eq!(&rotated, &x);
    }

    #[test]
    fn averaging_toward_the_mean_is_majorized(x in spectrum(4), lambda in 0.0f64..=1.0) {
        // x ↦ λx + (1-λ)·mean(x) is a doubly stochastic map
        let mean = x.sum() / 4.0;
        let y = Spectrum::new(x.values().iter().map(|v| lambda * v + (1.0 - lambda) * mean).collect()).unwrap();
        prop_assert!(majorizes(&x, &y, MAJORIZATION_TOL).unwrap().verdict);
        prop_assert!(weak_majorizes(&x, &y, MAJORIZATION_TOL).unwrap().verdict);
    }

    #[test]
    fn log_majorization_matches_additive_on_logs(x in spectrum(4), lambda in 0.0f64..=1.0) {
        let logs: Vec<f64> = x.values().iter().map(|v| v.ln()).collect();
        let mean = logs.iter().sum::<f64>() / 4.0;
        let y = Spectrum::new(logs.iter().map(|l| (lambda * l + (1.0 - lambda) * mean).exp()).collect()).unwrap();
        prop_assert!(log_majorizes(&x, &y, MAJORIZATION_TOL).unwrap().verdict);
    }

    #[test]
    fn spectral_mean_at_half_squares_to_product_spectrum((a, b) in pair()) {
        let mean = spectral_mean(&a, &b, Weight::HALF).unwrap();
        let inner = mat_power(&a, 0.5).unwrap().sandwich(&b).unwrap();
        for (m, p) in mean.spectrum().values().iter().zip(inner.spectrum().values()) {
            prop_assert!((m * m / p - 1.0).abs() < 1e-9);
        }
    }
}

#[test]
fn identity_matrix_is_fixed_by_every_mean() {
    let id = PositiveDefiniteMatrix::identity(3);
    for t in [0.0, 0.3, 1.0] {
        let w = Weight::new(t).unwrap();
        assert!(max_abs(&(metric_mean(&id, &id, w).unwrap().as_matrix() - CMatrix::identity(3, 3))) < 1e-15);
        assert!(max_abs(&(spectral_mean(&id, &id, w).unwrap().as_matrix() - CMatrix::identity(3, 3))) < 1e-15);
    }
}
