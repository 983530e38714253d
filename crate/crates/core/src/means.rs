//! Matrix Heinz, arithmetic and geometric means, the two-sided Heinz
//! sandwich, trace quantities and spectral bounds.

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::linalg::{power_of, ComplexMatrix, EigenDecomposition, HermitianMatrix, CLAMP_TOL};

/// Imaginary dust tolerated in traces that are real analytically.
pub const TRACE_IMAG_TOL: f64 = 1e-10;

/// `(A, X, B)` with `A`, `B` positive semidefinite and all three `n x n`.
#[derive(Debug, Clone)]
pub struct MeanTriple {
    a: HermitianMatrix,
    b: HermitianMatrix,
    x: ComplexMatrix,
    ea: EigenDecomposition,
    eb: EigenDecomposition,
}

impl MeanTriple {
    pub fn new(a: HermitianMatrix, b: HermitianMatrix, x: ComplexMatrix) -> Result<Self> {
        let n = a.n();
        if b.n() != n || x.rows() != n || x.cols() != n {
            return Err(Error::Dimension {
                expected: format!("{n}x{n} operands"),
                found: format!("B {0}x{0}, X {1}x{2}", b.n(), x.rows(), x.cols()),
            });
        }
        let ea = a.eigh()?;
        let eb = b.eigh()?;
        for e in [&ea, &eb] {
            if e.min_value() < -CLAMP_TOL * (1.0 + e.source_norm()) {
                return Err(Error::NotPositive {
                    min_eigenvalue: e.min_value(),
                });
            }
        }
        Ok(MeanTriple { a, b, x, ea, eb })
    }

    pub fn n(&self) -> usize {
        self.a.n()
    }

    pub fn a(&self) -> &HermitianMatrix {
        &self.a
    }

    pub fn b(&self) -> &HermitianMatrix {
        &self.b
    }

    pub fn x(&self) -> &ComplexMatrix {
        &self.x
    }

    pub fn a_eigen(&self) -> &EigenDecomposition {
        &self.ea
    }

    pub fn b_eigen(&self) -> &EigenDecomposition {
        &self.eb
    }

    pub fn a_pow(&self, t: f64) -> Result<HermitianMatrix> {
        exact_endpoint_power(&self.a, &self.ea, t)
    }

    pub fn b_pow(&self, t: f64) -> Result<HermitianMatrix> {
        exact_endpoint_power(&self.b, &self.eb, t)
    }

    /// `AX + XB`
    pub fn endpoint_sum(&self) -> ComplexMatrix {
        &(self.a.as_matrix() * &self.x) + &(&self.x * self.b.as_matrix())
    }

    /// `A^t X B^{1-t}`
    pub fn one_sided(&self, t: f64) -> Result<ComplexMatrix> {
        Ok(&(self.a_pow(t)?.as_matrix() * &self.x) * self.b_pow(1.0 - t)?.as_matrix())
    }
}

fn exact_endpoint_power(
    m: &HermitianMatrix,
    e: &EigenDecomposition,
    t: f64,
) -> Result<HermitianMatrix> {
    if t == 0.0 {
        Ok(HermitianMatrix::identity(m.n()))
    } else if t == 1.0 {
        Ok(m.clone())
    } else {
        power_of(e, t)
    }
}

/// Precomputed pieces of `A #_t B = A^{1/2} (A^{-1/2} B A^{-1/2})^t A^{1/2}`
/// for a fixed positive definite pair.
#[derive(Debug, Clone)]
pub struct GeometricPath {
    a: HermitianMatrix,
    b: HermitianMatrix,
    a_half: HermitianMatrix,
    a_neg_half: HermitianMatrix,
    inner: EigenDecomposition,
}

impl GeometricPath {
    pub fn new(a: &HermitianMatrix, b: &HermitianMatrix) -> Result<Self> {
        check_same_dim(a, b)?;
        require_pd(b)?;
        let ea = require_pd(a)?;
        let a_half = power_of(&ea, 0.5)?;
        let a_neg_half = power_of(&ea, -0.5)?;
        let inner = b.congruence(&a_neg_half).eigh()?;
        Ok(GeometricPath {
            a: a.clone(),
            b: b.clone(),
            a_half,
            a_neg_half,
            inner,
        })
    }

    pub fn a(&self) -> &HermitianMatrix {
        &self.a
    }

    pub fn b(&self) -> &HermitianMatrix {
        &self.b
    }

    /// `A^{-1/2}`
    pub fn a_neg_half(&self) -> &HermitianMatrix {
        &self.a_neg_half
    }

    /// Eigenvalues of `A^{-1/2} B A^{-1/2}`, descending.
    pub fn relative_spectrum(&self) -> &[f64] {
        self.inner.values()
    }

    /// `A #_t B` for `t` in `[0, 2]`, exact at `t = 0` and `t = 1`.
    pub fn at(&self, t: f64) -> Result<HermitianMatrix> {
        if !(0.0..=2.0).contains(&t) {
            return Err(domain(format!(
                "geometric-mean weight must lie in [0,2], got {t}"
            )));
        }
        if t == 0.0 {
            return Ok(self.a.clone());
        }
        if t == 1.0 {
            return Ok(self.b.clone());
        }
        let inner_t = power_of(&self.inner, t)?;
        Ok(inner_t.congruence(&self.a_half))
    }

    /// `H_t(A,B) = (A #_t B + A #_{1-t} B) / 2`
    pub fn heinz(&self, t: f64) -> Result<HermitianMatrix> {
        check_unit(t)?;
        Ok(self.at(t)?.add(&self.at(1.0 - t)?).scale(0.5))
    }

    /// `A #_t B + A #_{1-t} B`
    pub fn heinz_sum(&self, t: f64) -> Result<HermitianMatrix> {
        check_unit(t)?;
        Ok(self.at(t)?.add(&self.at(1.0 - t)?))
    }
}

/// `A #_t B` for positive definite `A`, `B` and `t` in `[0, 2]`.
pub fn geo_mean_t(a: &HermitianMatrix, b: &HermitianMatrix, t: f64) -> Result<HermitianMatrix> {
    if !(0.0..=2.0).contains(&t) {
        return Err(domain(format!(
            "geometric-mean weight must lie in [0,2], got {t}"
        )));
    }
    GeometricPath::new(a, b)?.at(t)
}

/// `(1-t) A + t B`
pub fn arith_mean_t(a: &HermitianMatrix, b: &HermitianMatrix, t: f64) -> Result<HermitianMatrix> {
    check_same_dim(a, b)?;
    check_unit(t)?;
    if t == 0.0 {
        return Ok(a.clone());
    }
    if t == 1.0 {
        return Ok(b.clone());
    }
    Ok(a.scale(1.0 - t).add(&b.scale(t)))
}

pub fn matrix_heinz(a: &HermitianMatrix, b: &HermitianMatrix, t: f64) -> Result<HermitianMatrix> {
    check_unit(t)?;
    GeometricPath::new(a, b)?.heinz(t)
}

/// `A^t X B^{1-t} + A^{1-t} X B^t`.
pub fn heinz_sandwich(triple: &MeanTriple, t: f64) -> Result<ComplexMatrix> {
    check_unit(t)?;
    Ok(&triple.one_sided(t)? + &triple.one_sided(1.0 - t)?)
}

/// `tr(A^t B^{1-t})` for positive definite `A`, `B`.
pub fn trace_power_product(a: &HermitianMatrix, b: &HermitianMatrix, t: f64) -> Result<f64> {
    check_same_dim(a, b)?;
    check_unit(t)?;
    let ea = require_pd(a)?;
    let eb = require_pd(b)?;
    let at = exact_endpoint_power(a, &ea, t)?;
    let bt = exact_endpoint_power(b, &eb, 1.0 - t)?;
    real_trace(&(at.as_matrix() * bt.as_matrix()))
}

/// Real part of a trace that is real analytically; errors if the imaginary
/// part exceeds [`TRACE_IMAG_TOL`] relative.
pub fn real_trace(m: &ComplexMatrix) -> Result<f64> {
    let tr = m.trace();
    if tr.im.abs() > TRACE_IMAG_TOL * tr.norm().max(f64::MIN_POSITIVE) {
        return Err(Error::Numerical(format!(
            "trace expected real, imaginary part {:e} against |trace| {:e}",
            tr.im,
            tr.norm()
        )));
    }
    Ok(tr.re)
}

/// Extreme eigenvalues over both spectra and the Kantorovich constant
/// `((M + m) / (2 sqrt(m M)))^2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralBounds {
    pub m: f64,
    #[serde(rename = "M")]
    pub big_m: f64,
    pub kantorovich: f64,
}

impl SpectralBounds {
    pub fn from_range(m: f64, big_m: f64) -> Result<Self> {
        if !(m > 0.0 && m <= big_m) {
            return Err(domain(format!("need 0 < m <= M, got m={m}, M={big_m}")));
        }
        let k = (m + big_m) / (2.0 * (m * big_m).sqrt());
        Ok(SpectralBounds {
            m,
            big_m,
            kantorovich: k * k,
        })
    }

    /// `(M + m) / (2 sqrt(m M))`, the square root of the Kantorovich constant.
    pub fn kantorovich_root(&self) -> f64 {
        (self.m + self.big_m) / (2.0 * (self.m * self.big_m).sqrt())
    }
}

pub fn spectral_bounds(a: &HermitianMatrix, b: &HermitianMatrix) -> Result<SpectralBounds> {
    let ea = require_pd(a)?;
    let eb = require_pd(b)?;
    bounds_from(&ea, &eb)
}

pub(crate) fn bounds_from(
    ea: &EigenDecomposition,
    eb: &EigenDecomposition,
) -> Result<SpectralBounds> {
    let m = ea.min_value().min(eb.min_value());
    let big_m = ea.max_value().max(eb.max_value());
    SpectralBounds::from_range(m, big_m)
}

pub(crate) fn require_pd(a: &HermitianMatrix) -> Result<EigenDecomposition> {
    let e = a.eigh()?;
    if !(e.min_value() > 0.0) {
        return Err(Error::NotPositive {
            min_eigenvalue: e.min_value(),
        });
    }
    Ok(e)
}

fn check_same_dim(a: &HermitianMatrix, b: &HermitianMatrix) -> Result<()> {
    if a.n() != b.n() {
        return Err(Error::Dimension {
            expected: format!("{0}x{0}", a.n()),
            found: format!("{0}x{0}", b.n()),
        });
    }
    Ok(())
}

fn check_unit(t: f64) -> Result<()> {
    if (0.0..=1.0).contains(&t) {
        Ok(())
    } else {
        Err(domain(format!("t must lie in [0,1], got {t}")))
    }
}
