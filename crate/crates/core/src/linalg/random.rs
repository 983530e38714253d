//! Seeded instance generation.
//!
//! The stream is Xoshiro256++ seeded through SplitMix64, and normals come
//! from the Box–Muller transform, so a given seed yields the same bits on
//! every platform.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

use super::eigen::{eigh, DEFAULT_EIGH_TOL};
use super::matrix::{ComplexMatrix, HermitianMatrix};
use crate::error::{domain, Result};

pub const DEFAULT_COND_CAP: f64 = 1e4;
pub const MAX_RANDOM_DIM: usize = 16;

#[derive(Debug, Clone)]
pub struct SeededRng {
    inner: Xoshiro256PlusPlus,
    spare: Option<f64>,
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        SeededRng {
            inner: Xoshiro256PlusPlus::seed_from_u64(seed),
            spare: None,
        }
    }

    /// Independent stream for trial `index` of a run seeded with `seed`.
    pub fn for_trial(seed: u64, index: u64) -> Self {
        Self::new(seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15))
    }

    /// Uniform on `[0, 1)` with 53 random bits.
    pub fn uniform(&mut self) -> f64 {
        (self.inner.random::<u64>() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    /// `exp(uniform(ln lo, ln hi))`
    pub fn log_uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        self.uniform_in(lo.ln(), hi.ln()).exp()
    }

    pub fn integer_in(&mut self, lo: usize, hi: usize) -> usize {
        debug_assert!(lo <= hi);
        lo + (self.inner.random::<u64>() % (hi - lo + 1) as u64) as usize
    }

    /// Standard normal via Box–Muller; the second variate is cached.
    pub fn normal(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        // 1 - u lies in (0, 1], keeping ln finite.
        let u1 = 1.0 - self.uniform();
        let u2 = self.uniform();
        let r = (-2.0 * u1.ln()).sqrt();
        self.spare = Some(r * (TAU * u2).sin());
        r * (TAU * u2).cos()
    }

    /// Circular complex Gaussian with unit variance per component.
    pub fn complex_normal(&mut self) -> Complex64 {
        let re = self.normal();
        let im = self.normal();
        Complex64::new(re, im)
    }
}

pub fn random_complex(rng: &mut SeededRng, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| rng.complex_normal())
}

/// `G G* + eps I` with `eps` the smallest shift bringing the condition
/// number under `cond_cap`.
pub fn random_pd_from(rng: &mut SeededRng, n: usize, cond_cap: f64) -> Result<HermitianMatrix> {
    if n == 0 || n > MAX_RANDOM_DIM {
        return Err(domain(format!(
            "dimension must lie in 1..={MAX_RANDOM_DIM}, got {n}"
        )));
    }
    if !(cond_cap > 1.0) {
        return Err(domain(format!(
            "condition cap must exceed 1, got {cond_cap}"
        )));
    }
    let g = random_complex(rng, n, n);
    let gram = HermitianMatrix::symmetrized(&g * &g.adjoint());
    let e = eigh(&gram, DEFAULT_EIGH_TOL)?;
    let (hi, lo) = (e.max_value(), e.min_value());
    // Aim slightly below the cap so rounding cannot push past it.
    let target = cond_cap * (1.0 - 1e-6);
    let eps = ((hi - target * lo) / (target - 1.0)).max(0.0);
    let mut m = gram.into_matrix();
    for i in 0..n {
        m[(i, i)] += eps;
    }
    Ok(HermitianMatrix::symmetrized(m))
}

pub fn random_pd(n: usize, seed: u64, cond_cap: f64) -> Result<HermitianMatrix> {
    random_pd_from(&mut SeededRng::new(seed), n, cond_cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::is_psd;

    #[test]
    fn deterministic_for_fixed_seed() {
        let a = random_pd(3, 42, DEFAULT_COND_CAP).unwrap();
        let b = random_pd(3, 42, DEFAULT_COND_CAP).unwrap();
        assert_eq!(a, b);
        let c = random_pd(3, 43, DEFAULT_COND_CAP).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn positive_definite_with_zero_tolerance() {
        for seed in 0..50 {
            let a = random_pd(1 + (seed as usize % 8), seed, DEFAULT_COND_CAP).unwrap();
            assert!(is_psd(&a, 0.0).unwrap());
        }
    }

    #[test]
    fn condition_cap_respected() {
        for seed in 0..100 {
            let cap = 50.0;
            let a = random_pd(5, seed, cap).unwrap();
            let e = eigh(&a, DEFAULT_EIGH_TOL).unwrap();
            assert!(e.max_value() / e.min_value() <= cap, "seed {seed}");
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(random_pd(0, 1, 10.0).is_err());
        assert!(random_pd(17, 1, 10.0).is_err());
        assert!(random_pd(3, 1, 1.0).is_err());
    }

    #[test]
    fn normals_have_plausible_moments() {
        let mut rng = SeededRng::new(9);
        let n = 20_000;
        let xs: Vec<f64> = (0..n).map(|_| rng.normal()).collect();
        let mean = xs.iter().sum::<f64>() / n as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n as f64;
        assert!(mean.abs() < 0.05);
        assert!((var - 1.0).abs() < 0.05);
    }

    #[test]
    fn trial_streams_differ() {
        let a = SeededRng::for_trial(7, 0).uniform();
        let b = SeededRng::for_trial(7, 1).uniform();
        assert_ne!(a, b);
    }
}
