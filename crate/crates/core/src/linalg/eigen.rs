//! Cyclic complex Jacobi eigensolver for Hermitian matrices.

use num_complex::Complex64;

use super::matrix::{ComplexMatrix, HermitianMatrix};
use crate::error::{Error, Result};

pub const DEFAULT_EIGH_TOL: f64 = 1e-14;
pub const MAX_SWEEPS: usize = 50;

/// `A = U diag(lambda) U*` with `lambda` sorted descending.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    vectors: ComplexMatrix,
    values: Vec<f64>,
    source_norm: f64,
}

impl EigenDecomposition {
    pub fn vectors(&self) -> &ComplexMatrix {
        &self.vectors
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Frobenius norm of the decomposed matrix.
    pub fn source_norm(&self) -> f64 {
        self.source_norm
    }

    pub fn min_value(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }

    pub fn max_value(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    /// `U diag(f(lambda_i)) U*`.
    pub fn apply(&self, mut f: impl FnMut(f64) -> f64) -> HermitianMatrix {
        let n = self.values.len();
        let mapped: Vec<f64> = self.values.iter().map(|&l| f(l)).collect();
        let u = &self.vectors;
        let m = ComplexMatrix::from_fn(n, n, |i, j| {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..n {
                acc += u[(i, k)] * mapped[k] * u[(j, k)].conj();
            }
            acc
        });
        HermitianMatrix::symmetrized(m)
    }

    pub fn reconstruct(&self) -> HermitianMatrix {
        self.apply(|l| l)
    }
}

/// Eigendecomposition by cyclic Jacobi sweeps, stopping once the
/// off-diagonal Frobenius mass is at most `tol * ||A||_F`.
pub fn eigh(a: &HermitianMatrix, tol: f64) -> Result<EigenDecomposition> {
    let n = a.n();
    let norm = a.frobenius_norm();
    let mut m = a.as_matrix().clone();
    let mut v = ComplexMatrix::identity(n);
    let threshold = tol * norm;

    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&m);
        if off <= threshold {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                residual: off,
            });
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
        sweeps += 1;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(j, j)].re.total_cmp(&m[(i, i)].re));
    let values = order.iter().map(|&i| m[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok(EigenDecomposition {
        vectors,
        values,
        source_norm: norm,
    })
}

fn off_diagonal_norm(m: &ComplexMatrix) -> f64 {
    let n = m.rows();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += m[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Annihilate `m[p][q]` with the unitary `W = diag(1, e^{-i phi}) R(theta)`
/// on the `(p, q)` plane, replacing `m` by `W* m W` and `v` by `v W`.
fn rotate(m: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let beta = m[(p, q)];
    let g = beta.norm();
    if g == 0.0 {
        return;
    }
    let phase = beta / g;
    let alpha = m[(p, p)].re;
    let gamma = m[(q, q)].re;

    let theta = (gamma - alpha) / (2.0 * g);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    let w_pp = Complex64::new(c, 0.0);
    let w_pq = Complex64::new(s, 0.0);
    let w_qp = -phase.conj() * s;
    let w_qq = phase.conj() * c;

    let n = m.rows();
    for k in 0..n {
        let (mkp, mkq) = (m[(k, p)], m[(k, q)]);
        m[(k, p)] = mkp * w_pp + mkq * w_qp;
        m[(k, q)] = mkp * w_pq + mkq * w_qq;
    }
    for k in 0..n {
        let (mpk, mqk) = (m[(p, k)], m[(q, k)]);
        m[(p, k)] = w_pp.conj() * mpk + w_qp.conj() * mqk;
        m[(q, k)] = w_pq.conj() * mpk + w_qq.conj() * mqk;
    }
    m[(p, q)] = Complex64::new(0.0, 0.0);
    m[(q, p)] = Complex64::new(0.0, 0.0);
    m[(p, p)] = Complex64::new(m[(p, p)].re, 0.0);
    m[(q, q)] = Complex64::new(m[(q, q)].re, 0.0);

    for k in 0..n {
        let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = vkp * w_pp + vkq * w_qp;
        v[(k, q)] = vkp * w_pq + vkq * w_qq;
    }
}
