//! Dense complex Hermitian numerics sized for n <= 16.

mod eigen;
mod matrix;
mod norms;
mod random;

pub use eigen::{eigh, EigenDecomposition, DEFAULT_EIGH_TOL, MAX_SWEEPS};
pub use matrix::{ComplexMatrix, HermitianMatrix, HERMITIAN_TOL};
pub use norms::{singular_values, ui_norm, NormKind};
pub use random::{
    random_complex, random_pd, random_pd_from, SeededRng, DEFAULT_COND_CAP, MAX_RANDOM_DIM,
};

use crate::error::{Error, Result};

/// Eigenvalues above `-CLAMP_TOL * ||A||_F` count as zero when powering.
pub const CLAMP_TOL: f64 = 1e-10;

impl HermitianMatrix {
    pub fn eigh(&self) -> Result<EigenDecomposition> {
        eigh(self, DEFAULT_EIGH_TOL)
    }
}

/// `A^t = U diag(lambda_i^t) U*` for positive semidefinite `A`, with
/// `0^0 = 1`. `A^0` is the identity and `A^1` is `A`, both exactly.
pub fn matrix_power(a: &HermitianMatrix, t: f64) -> Result<HermitianMatrix> {
    if t == 0.0 {
        return Ok(HermitianMatrix::identity(a.n()));
    }
    if t == 1.0 {
        return Ok(a.clone());
    }
    power_of(&a.eigh()?, t)
}

/// [`matrix_power`] from an existing decomposition.
pub fn power_of(e: &EigenDecomposition, t: f64) -> Result<HermitianMatrix> {
    let floor = -CLAMP_TOL * e.source_norm();
    let min = e.min_value();
    if min < floor {
        return Err(Error::NotPositive {
            min_eigenvalue: min,
        });
    }
    if t < 0.0 && min <= 0.0 {
        return Err(Error::Singular);
    }
    if t == 0.0 {
        return Ok(HermitianMatrix::identity(e.values().len()));
    }
    Ok(e.apply(|l| l.max(0.0).powf(t)))
}

/// `lambda_min(A) >= -tol (1 + ||A||_F)`.
pub fn is_psd(a: &HermitianMatrix, tol: f64) -> Result<bool> {
    Ok(psd_margin(a)? >= -tol)
}

/// `lambda_min(A) / (1 + ||A||_F)`: nonnegative iff `A` is PSD, and
/// comparable across instances of different scale.
pub fn psd_margin(a: &HermitianMatrix) -> Result<f64> {
    let e = a.eigh()?;
    Ok(e.min_value() / (1.0 + e.source_norm()))
}

/// `det(A)^{1/n}` for positive semidefinite `A`, as the geometric mean of
/// the eigenvalues; eigenvalue dust below zero is clamped.
pub fn det_root(a: &HermitianMatrix) -> Result<f64> {
    let e = a.eigh()?;
    let n = e.values().len() as f64;
    if e.min_value() < -CLAMP_TOL * e.source_norm() {
        return Err(Error::NotPositive {
            min_eigenvalue: e.min_value(),
        });
    }
    if e.min_value() <= 0.0 {
        return Ok(0.0);
    }
    Ok((e.values().iter().map(|l| l.ln()).sum::<f64>() / n).exp())
}

/// `ln det(A)` for positive definite `A`.
pub fn log_det(a: &HermitianMatrix) -> Result<f64> {
    let e = a.eigh()?;
    if e.min_value() <= 0.0 {
        return Err(Error::NotPositive {
            min_eigenvalue: e.min_value(),
        });
    }
    Ok(e.values().iter().map(|l| l.ln()).sum())
}
