//! Reference computations that share no code path with the library.

#![allow(dead_code)]

use geomeans::linalg::{c64, CMatrix, C64};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn rel_diff(x: &CMatrix, y: &CMatrix) -> f64 {
    max_abs(&(x - y)) / max_abs(y)
}

pub fn diag(values: &[f64]) -> CMatrix {
    let n = values.len();
    DMatrix::from_fn(n, n, |i, j| if i == j { c64(values[i]) } else { c64(0.0) })
}

/// Dense Hermitian matrix with independent uniform entries.
pub fn random_hermitian(n: usize, seed: u64) -> CMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = CMatrix::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = c64(rng.random_range(-1.0..1.0));
        for j in i + 1..n {
            let z = C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    m
}

/// `Z Z* + n·δ I` for a random complex `Z`.
pub fn random_pd(n: usize, seed: u64, shift: f64) -> CMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let z = DMatrix::from_fn(n, n, |_, _| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
    &z * z.adjoint() + CMatrix::identity(n, n) * c64(shift * n as f64)
}

/// Closed-form eigenvalues `(λ_max, λ_min)` of a 2×2 Hermitian matrix.
pub fn eig2(m: &CMatrix) -> (f64, f64) {
    let (a, d, b) = (m[(0, 0)].re, m[(1, 1)].re, m[(0, 1)]);
    let mid = 0.5 * (a + d);
    let rad = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
    (mid + rad, mid - rad)
}

/// `f(M)` for 2×2 Hermitian `M` by Sylvester's formula.
pub fn fn2(m: &CMatrix, f: impl Fn(f64) -> f64) -> CMatrix {
    let (l1, l2) = eig2(m);
    let id = CMatrix::identity(2, 2);
    if (l1 - l2).abs() <= 1e-14 * l1.abs().max(1.0) {
        return id * c64(f(l1));
    }
    ((m - &id * c64(l2)) * c64(f(l1)) - (m - &id * c64(l1)) * c64(f(l2))) / c64(l1 - l2)
}

pub fn pow2(m: &CMatrix, r: f64) -> CMatrix {
    fn2(m, |x| x.powf(r))
}

pub fn sharp2(a: &CMatrix, b: &CMatrix, t: f64) -> CMatrix {
    let (ah, aih) = (pow2(a, 0.5), pow2(a, -0.5));
    let inner = &aih * b * &aih;
    let inner = (&inner + inner.adjoint()) * c64(0.5);
    &ah * pow2(&inner, t) * &ah
}

pub fn natural2(a: &CMatrix, b: &CMatrix, t: f64) -> CMatrix {
    let ai = pow2(a, -1.0);
    let c = sharp2(&ai, b, 0.5);
    let c = (&c + c.adjoint()) * c64(0.5);
    let ct = pow2(&c, t);
    &ct * a * &ct
}

/// Taylor series with scaling and squaring.
pub fn taylor_exp(m: &CMatrix) -> CMatrix {
    let n = m.nrows();
    let norm: f64 = m.iter().map(|z| z.norm()).sum();
    let squarings = if norm > 0.5 { (norm / 0.5).log2().ceil() as i32 } else { 0 };
    let scaled = m / c64(2f64.powi(squarings));
    let mut term = CMatrix::identity(n, n);
    let mut sum = term.clone();
    for k in 1..30 {
        term = &term * &scaled / c64(k as f64);
        sum += &term;
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

/// Coefficients `c_0..c_n` of `det(λI − M) = Σ c_k λ^k` by Faddeev–LeVerrier.
pub fn char_poly(m: &CMatrix) -> Vec<C64> {
    let n = m.nrows();
    let mut coeffs = vec![c64(0.0); n + 1];
    coeffs[n] = c64(1.0);
    let mut mk = CMatrix::zeros(n, n);
    let id = CMatrix::identity(n, n);
    for k in 1..=n {
        mk = m * &mk + &id * coeffs[n - k + 1];
        let amk = m * &mk;
        coeffs[n - k] = -amk.trace() / c64(k as f64);
    }
    coeffs
}

/// Roots of a monic polynomial by Durand–Kerner iteration.
pub fn durand_kerner(coeffs: &[C64]) -> Vec<C64> {
    let n = coeffs.len() - 1;
    let eval = |z: C64| coeffs.iter().rev().fold(c64(0.0), |acc, c| acc * z + c);
    let bound = 1.0 + coeffs[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let seed = C64::new(0.4, 0.9);
    let mut roots: Vec<C64> = (0..n).map(|k| seed.powi(k as i32) * c64(bound)).collect();
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..n {
            let denom = (0..n).filter(|&j| j != i).fold(c64(1.0), |acc, j| acc * (roots[i] - roots[j]));
            let step = eval(roots[i]) / denom;
            roots[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 * bound {
            break;
        }
    }
    roots
}

/// Largest singular value by power iteration on `M* M`.
pub fn power_iteration_norm(m: &CMatrix) -> f64 {
    let n = m.ncols();
    let g = m.adjoint() * m;
    let mut v = nalgebra::DVector::from_fn(n, |i, _| C64::new(1.0 + i as f64 * 0.37, 0.11 * i as f64));
    let mut estimate = 0.0;
    for _ in 0..5000 {
        let w = &g * &v;
        let norm = w.norm();
        v = w / c64(norm);
        if (norm - estimate).abs() <= 1e-15 * norm {
            break;
        }
        estimate = norm;
    }
    estimate.sqrt()
}

/// All permutations of `0..n` (Heap's algorithm).
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn heap(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(p.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, p, out);
            let j = if k % 2 == 0 { i } else { 0 };
            p.swap(j, k - 1);
        }
    }
    let mut out = Vec::new();
    heap(n, &mut (0..n).collect(), &mut out);
    out
}
