use std::fmt;

use serde::Serialize;

use super::eigen::{eigh, DEFAULT_EIGH_TOL};
use super::matrix::{ComplexMatrix, HermitianMatrix};
use crate::error::{Error, Result};

/// A unitarily invariant norm, determined by the singular values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum NormKind {
    Spectral,
    TraceNorm,
    HilbertSchmidt,
    /// `(sum sigma_i^p)^{1/p}`; `p = inf` is the spectral norm.
    Schatten(f64),
    /// Sum of the `k` largest singular values.
    KyFan(usize),
}

impl NormKind {
    /// The five norms every unitarily invariant relation is checked under.
    pub const REPRESENTATIVES: [NormKind; 5] = [
        NormKind::Spectral,
        NormKind::TraceNorm,
        NormKind::HilbertSchmidt,
        NormKind::Schatten(3.0),
        NormKind::KyFan(2),
    ];

    pub fn label(&self) -> String {
        match self {
            NormKind::Spectral => "SPECTRAL".into(),
            NormKind::TraceNorm => "TRACE_NORM".into(),
            NormKind::HilbertSchmidt => "HILBERT_SCHMIDT".into(),
            NormKind::Schatten(p) => format!("SCHATTEN({p})"),
            NormKind::KyFan(k) => format!("KY_FAN({k})"),
        }
    }
}

impl fmt::Display for NormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Singular values of `x`, descending, from the eigenvalues of `x* x`.
pub fn singular_values(x: &ComplexMatrix) -> Result<Vec<f64>> {
    let gram = HermitianMatrix::symmetrized(&x.adjoint() * x);
    let e = eigh(&gram, DEFAULT_EIGH_TOL)?;
    let k = x.rows().min(x.cols());
    Ok(e.values()[..k].iter().map(|&l| l.max(0.0).sqrt()).collect())
}

pub fn ui_norm(x: &ComplexMatrix, kind: NormKind) -> Result<f64> {
    let k_max = x.rows().min(x.cols());
    match kind {
        // Entrywise formula; agrees with Schatten(2) on the singular values.
        NormKind::HilbertSchmidt => return Ok(x.frobenius_norm()),
        NormKind::Schatten(p) if !(p >= 1.0) => {
            return Err(Error::Usage(format!(
                "Schatten exponent must be >= 1, got {p}"
            )))
        }
        NormKind::KyFan(k) if k == 0 || k > k_max => {
            return Err(Error::Usage(format!(
                "Ky Fan index must lie in 1..={k_max}, got {k}"
            )))
        }
        _ => {}
    }
    let sigma = singular_values(x)?;
    Ok(norm_from_singular_values(&sigma, kind))
}

fn norm_from_singular_values(sigma: &[f64], kind: NormKind) -> f64 {
    let top = sigma.first().copied().unwrap_or(0.0);
    match kind {
        NormKind::Spectral => top,
        NormKind::TraceNorm => sigma.iter().sum(),
        NormKind::HilbertSchmidt => sigma.iter().map(|s| s * s).sum::<f64>().sqrt(),
        NormKind::Schatten(p) if p.is_infinite() => top,
        NormKind::Schatten(p) => {
            if top == 0.0 {
                return 0.0;
            }
            // Scale by the largest value so sigma^p cannot overflow.
            let s: f64 = sigma.iter().map(|s| (s / top).powf(p)).sum();
            top * s.powf(1.0 / p)
        }
        NormKind::KyFan(k) => sigma.iter().take(k).sum(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(x: f64, y: f64, tol: f64) -> bool {
        (x - y).abs() <= tol * (1.0 + y.abs())
    }

    #[test]
    fn singular_value_examples() {
        let i2 = ComplexMatrix::identity(2);
        let s = singular_values(&i2).unwrap();
        assert!(close(s[0], 1.0, 1e-15) && close(s[1], 1.0, 1e-15));

        let d = ComplexMatrix::from_real_diag(&[3.0, -4.0]);
        let s = singular_values(&d).unwrap();
        assert!(close(s[0], 4.0, 1e-15) && close(s[1], 3.0, 1e-15));

        let ones = ComplexMatrix::from_real_rows(&[&[1.0, 1.0], &[1.0, 1.0]]);
        let s = singular_values(&ones).unwrap();
        assert!(close(s[0], 2.0, 1e-14));
        assert!(s[1].abs() < 1e-7);
    }

    #[test]
    fn norm_examples() {
        let d = ComplexMatrix::from_real_diag(&[1.0, 1.5]);
        assert!(close(ui_norm(&d, NormKind::Spectral).unwrap(), 1.5, 1e-15));
        let d = ComplexMatrix::from_real_diag(&[3.0, 4.0]);
        assert_eq!(ui_norm(&d, NormKind::HilbertSchmidt).unwrap(), 5.0);
        assert!(close(ui_norm(&d, NormKind::TraceNorm).unwrap(), 7.0, 1e-15));
        assert!(close(ui_norm(&d, NormKind::KyFan(1)).unwrap(), 4.0, 1e-15));
        assert!(close(
            ui_norm(&d, NormKind::Schatten(f64::INFINITY)).unwrap(),
            4.0,
            1e-15
        ));
    }

    #[test]
    fn invalid_parameters_are_usage_errors() {
        let d = ComplexMatrix::from_real_diag(&[3.0, 4.0]);
        assert!(matches!(
            ui_norm(&d, NormKind::KyFan(3)),
            Err(Error::Usage(_))
        ));
        assert!(matches!(
            ui_norm(&d, NormKind::KyFan(0)),
            Err(Error::Usage(_))
        ));
        assert!(matches!(
            ui_norm(&d, NormKind::Schatten(0.5)),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn rectangular_input() {
        let x = ComplexMatrix::from_real_rows(&[&[3.0, 0.0, 0.0], &[0.0, 4.0, 0.0]]);
        let s = singular_values(&x).unwrap();
        assert_eq!(s.len(), 2);
        assert!(close(s[0], 4.0, 1e-15) && close(s[1], 3.0, 1e-15));
    }
}
