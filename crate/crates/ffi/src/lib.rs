//! C ABI over the `heinz` crate.
//!
//! Every function returns a [`HeinzStatus`]; values come back through out
//! pointers. On failure the message is kept per thread and can be read with
//! [`heinz_last_error`]. Matrices and reports are opaque handles that the
//! caller releases with the matching `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use heinz::interpolation::{l1_error, minimize_l1, tau_star};
use heinz::linalg::{random_pd, ComplexMatrix, HermitianMatrix};
use heinz::means::{geo_mean_t, matrix_heinz};
use heinz::scalar::{
    evaluate_scalar_relation, f_ratio, heinz, heron, interpolator_f, mult_ratio, EvalOptions,
    ParamPair, PositivePair, ScalarParams, ScalarRelationId,
};
use heinz::suite::{
    counterexample, run_matrix_suite, run_scalar_suite, MatrixSuiteConfig, ScalarSuiteConfig,
    VerificationReport,
};
use heinz::Error;
use num_complex::Complex64;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HeinzStatus {
    Ok = 0,
    Domain = 1,
    Usage = 2,
    Boundary = 3,
    Dimension = 4,
    NotHermitian = 5,
    NotPositive = 6,
    Singular = 7,
    NoConvergence = 8,
    Quadrature = 9,
    Numerical = 10,
    NullPointer = 11,
    InvalidUtf8 = 12,
    Panic = 13,
}

impl From<&Error> for HeinzStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Domain(_) => HeinzStatus::Domain,
            Error::Usage(_) => HeinzStatus::Usage,
            Error::BoundaryRegion { .. } => HeinzStatus::Boundary,
            Error::Dimension { .. } => HeinzStatus::Dimension,
            Error::NotHermitian { .. } => HeinzStatus::NotHermitian,
            Error::NotPositive { .. } => HeinzStatus::NotPositive,
            Error::Singular => HeinzStatus::Singular,
            Error::NoConvergence { .. } => HeinzStatus::NoConvergence,
            Error::Quadrature { .. } => HeinzStatus::Quadrature,
            Error::Numerical(_) => HeinzStatus::Numerical,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HeinzSuite {
    Scalar = 0,
    Matrix = 1,
}

/// One evaluated inequality. `holds` is nonzero when the inequality is
/// satisfied within tolerance.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct HeinzOutcome {
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub holds: bool,
}

/// Opaque Hermitian matrix.
pub struct HeinzHermitian(HermitianMatrix);

/// Opaque verification report.
pub struct HeinzReport(VerificationReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

enum Failure {
    Heinz(Error),
    Null(&'static str),
    Utf8,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Heinz(e)
    }
}

fn guard<F>(f: F) -> HeinzStatus
where
    F: FnOnce() -> Result<(), Failure>,
{
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HeinzStatus::Ok,
        Ok(Err(Failure::Heinz(e))) => {
            set_last_error(e.to_string());
            HeinzStatus::from(&e)
        }
        Ok(Err(Failure::Null(what))) => {
            set_last_error(format!("null pointer passed for {what}"));
            HeinzStatus::NullPointer
        }
        Ok(Err(Failure::Utf8)) => {
            set_last_error("string argument is not valid UTF-8".into());
            HeinzStatus::InvalidUtf8
        }
        Err(_) => {
            set_last_error("internal panic".into());
            HeinzStatus::Panic
        }
    }
}

fn out<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, Failure> {
    // SAFETY: the caller guarantees a non-null pointer is valid for writes.
    unsafe { p.as_mut() }.ok_or(Failure::Null(what))
}

fn handle<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Failure> {
    // SAFETY: non-null handles were produced by this library and not freed.
    unsafe { p.as_ref() }.ok_or(Failure::Null(what))
}

fn boxed<T>(value: T) -> *mut T {
    Box::into_raw(Box::new(value))
}

/// Message of the last failed call on this thread, or NULL if none.
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn heinz_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// `H_t(a, b)`.
#[no_mangle]
pub extern "C" fn heinz_mean(a: f64, b: f64, t: f64, result: *mut f64) -> HeinzStatus {
    guard(|| {
        *out(result, "result")? = heinz(&PositivePair::new(a, b)?, t)?;
        Ok(())
    })
}

/// `K_t(a, b)`.
#[no_mangle]
pub extern "C" fn heinz_heron_mean(a: f64, b: f64, t: f64, result: *mut f64) -> HeinzStatus {
    guard(|| {
        *out(result, "result")? = heron(&PositivePair::new(a, b)?, t)?;
        Ok(())
    })
}

/// The quadratic through `H_0`, `H_tau`, `H_1`, evaluated at `t`.
#[no_mangle]
pub extern "C" fn heinz_interpolator(
    a: f64,
    b: f64,
    tau: f64,
    t: f64,
    result: *mut f64,
) -> HeinzStatus {
    guard(|| {
        *out(result, "result")? = interpolator_f(&PositivePair::new(a, b)?, tau, t)?;
        Ok(())
    })
}

#[no_mangle]
pub extern "C" fn heinz_f_ratio(c: f64, t: f64, result: *mut f64) -> HeinzStatus {
    guard(|| {
        *out(result, "result")? = f_ratio(c, t)?;
        Ok(())
    })
}

#[no_mangle]
pub extern "C" fn heinz_mult_ratio(c: f64, t: f64, result: *mut f64) -> HeinzStatus {
    guard(|| {
        *out(result, "result")? = mult_ratio(c, t)?;
        Ok(())
    })
}

/// Evaluates the scalar relation called `name` (for example
/// `"CORE_COMPARISON"`). Two-parameter relations read `nu` and `tau`;
/// the others read `t`.
///
/// # Safety
/// `name` must be NULL or a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn heinz_scalar_relation(
    name: *const c_char,
    a: f64,
    b: f64,
    t: f64,
    nu: f64,
    tau: f64,
    result: *mut HeinzOutcome,
) -> HeinzStatus {
    guard(|| {
        if name.is_null() {
            return Err(Failure::Null("name"));
        }
        // SAFETY: checked non-null; the caller guarantees termination.
        let name = unsafe { CStr::from_ptr(name) }
            .to_str()
            .map_err(|_| Failure::Utf8)?;
        let rel = ScalarRelationId::from_name(name)
            .ok_or_else(|| Error::Usage(format!("unknown scalar relation {name:?}")))?;
        let params = if rel.takes_pair() {
            ScalarParams::Pair(ParamPair::new(nu, tau)?)
        } else {
            ScalarParams::Single(t)
        };
        let o = evaluate_scalar_relation(
            rel,
            &PositivePair::new(a, b)?,
            params,
            &EvalOptions::default(),
        )?;
        *out(result, "result")? = HeinzOutcome {
            lhs: o.lhs,
            rhs: o.rhs,
            margin: o.margin,
            holds: o.holds,
        };
        Ok(())
    })
}

/// Root of `8 tau^3 - 12 tau^2 + 1` in `(0, 1/2)`.
#[no_mangle]
pub extern "C" fn heinz_tau_star(tol: f64, tau: *mut f64, residual: *mut f64) -> HeinzStatus {
    guard(|| {
        let r = tau_star(tol)?;
        *out(tau, "tau")? = r.tau;
        if !residual.is_null() {
            *out(residual, "residual")? = r.residual;
        }
        Ok(())
    })
}

/// `int_0^{1/2} |H_t(1, b) - F_tau(t)| dt`.
#[no_mangle]
pub extern "C" fn heinz_l1_error(b: f64, tau: f64, quad_tol: f64, result: *mut f64) -> HeinzStatus {
    guard(|| {
        *out(result, "result")? = l1_error(b, tau, quad_tol)?;
        Ok(())
    })
}

#[no_mangle]
pub extern "C" fn heinz_minimize_l1(
    b: f64,
    quad_tol: f64,
    tau: *mut f64,
    value: *mut f64,
) -> HeinzStatus {
    guard(|| {
        let m = minimize_l1(b, quad_tol)?;
        *out(tau, "tau")? = m.tau;
        if !value.is_null() {
            *out(value, "value")? = m.value;
        }
        Ok(())
    })
}

#[no_mangle]
pub extern "C" fn heinz_counterexample(
    lhs: *mut f64,
    rhs: *mut f64,
    violated: *mut bool,
) -> HeinzStatus {
    guard(|| {
        let c = counterexample()?;
        *out(lhs, "lhs")? = c.lhs;
        *out(rhs, "rhs")? = c.rhs;
        *out(violated, "violated")? = c.violated;
        Ok(())
    })
}

/// Builds an `n x n` Hermitian matrix from row-major real and imaginary
/// parts. `im` may be NULL for a real symmetric matrix.
///
/// # Safety
/// `re` (and `im` when non-null) must point to `n * n` readable doubles.
#[no_mangle]
pub unsafe extern "C" fn heinz_hermitian_new(
    n: usize,
    re: *const f64,
    im: *const f64,
    result: *mut *mut HeinzHermitian,
) -> HeinzStatus {
    guard(|| {
        let slot = out(result, "result")?;
        if re.is_null() {
            return Err(Failure::Null("re"));
        }
        let len = n
            .checked_mul(n)
            .ok_or_else(|| Error::Usage(format!("dimension {n} too large")))?;
        // SAFETY: the caller guarantees n * n readable values.
        let re = unsafe { std::slice::from_raw_parts(re, len) };
        let im = if im.is_null() {
            None
        } else {
            // SAFETY: as above.
            Some(unsafe { std::slice::from_raw_parts(im, len) })
        };
        let data = (0..len)
            .map(|k| Complex64::new(re[k], im.map_or(0.0, |v| v[k])))
            .collect();
        let m = HermitianMatrix::new(ComplexMatrix::from_vec(n, n, data)?)?;
        *slot = boxed(HeinzHermitian(m));
        Ok(())
    })
}

/// Seeded random positive definite matrix with condition number below
/// `cond_cap`.
#[no_mangle]
pub extern "C" fn heinz_hermitian_random_pd(
    n: usize,
    seed: u64,
    cond_cap: f64,
    result: *mut *mut HeinzHermitian,
) -> HeinzStatus {
    guard(|| {
        let slot = out(result, "result")?;
        *slot = boxed(HeinzHermitian(random_pd(n, seed, cond_cap)?));
        Ok(())
    })
}

/// # Safety
/// `m` must be NULL or a handle from this library that is not yet freed.
#[no_mangle]
pub unsafe extern "C" fn heinz_hermitian_free(m: *mut HeinzHermitian) {
    if !m.is_null() {
        // SAFETY: produced by Box::into_raw in this library.
        drop(unsafe { Box::from_raw(m) });
    }
}

/// Dimension of `m`, or 0 for NULL.
#[no_mangle]
pub extern "C" fn heinz_hermitian_dim(m: *const HeinzHermitian) -> usize {
    handle(m, "m").map_or(0, |h| h.0.n())
}

/// Writes the eigenvalues of `m` in descending order into `values`, which
/// must hold `len >= n` doubles.
///
/// # Safety
/// `values` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn heinz_hermitian_eigenvalues(
    m: *const HeinzHermitian,
    values: *mut f64,
    len: usize,
) -> HeinzStatus {
    guard(|| {
        let m = handle(m, "m")?;
        if values.is_null() {
            return Err(Failure::Null("values"));
        }
        let n = m.0.n();
        if len < n {
            return Err(Error::Dimension {
                expected: format!("at least {n} slots"),
                found: len.to_string(),
            }
            .into());
        }
        let e = m.0.eigh()?;
        // SAFETY: the caller guarantees len writable values.
        let dst = unsafe { std::slice::from_raw_parts_mut(values, len) };
        dst[..n].copy_from_slice(e.values());
        Ok(())
    })
}

/// Copies the row-major entries of `m` into `re` and `im` (either may be
/// NULL), each holding `len >= n * n` doubles.
///
/// # Safety
/// Non-null `re` and `im` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn heinz_hermitian_entries(
    m: *const HeinzHermitian,
    re: *mut f64,
    im: *mut f64,
    len: usize,
) -> HeinzStatus {
    guard(|| {
        let m = handle(m, "m")?;
        let src = m.0.as_matrix().as_slice();
        if len < src.len() {
            return Err(Error::Dimension {
                expected: format!("at least {} slots", src.len()),
                found: len.to_string(),
            }
            .into());
        }
        for (k, z) in src.iter().enumerate() {
            // SAFETY: k < len and the caller guarantees len writable values.
            unsafe {
                if !re.is_null() {
                    *re.add(k) = z.re;
                }
                if !im.is_null() {
                    *im.add(k) = z.im;
                }
            }
        }
        Ok(())
    })
}

/// `A #_t B`.
#[no_mangle]
pub extern "C" fn heinz_geo_mean(
    a: *const HeinzHermitian,
    b: *const HeinzHermitian,
    t: f64,
    result: *mut *mut HeinzHermitian,
) -> HeinzStatus {
    guard(|| {
        let slot = out(result, "result")?;
        let m = geo_mean_t(&handle(a, "a")?.0, &handle(b, "b")?.0, t)?;
        *slot = boxed(HeinzHermitian(m));
        Ok(())
    })
}

/// `(A #_t B + A #_{1-t} B) / 2`.
#[no_mangle]
pub extern "C" fn heinz_matrix_heinz(
    a: *const HeinzHermitian,
    b: *const HeinzHermitian,
    t: f64,
    result: *mut *mut HeinzHermitian,
) -> HeinzStatus {
    guard(|| {
        let slot = out(result, "result")?;
        let m = matrix_heinz(&handle(a, "a")?.0, &handle(b, "b")?.0, t)?;
        *slot = boxed(HeinzHermitian(m));
        Ok(())
    })
}

/// Runs a verification suite with default tolerances. `dim_lo..=dim_hi`
/// is ignored for the scalar suite.
#[no_mangle]
pub extern "C" fn heinz_run_suite(
    suite: HeinzSuite,
    trials: usize,
    seed: u64,
    dim_lo: usize,
    dim_hi: usize,
    result: *mut *mut HeinzReport,
) -> HeinzStatus {
    guard(|| {
        let slot = out(result, "result")?;
        let report = match suite {
            HeinzSuite::Scalar => run_scalar_suite(&ScalarSuiteConfig {
                trials,
                seed,
                ..ScalarSuiteConfig::default()
            })?,
            HeinzSuite::Matrix => run_matrix_suite(&MatrixSuiteConfig {
                trials,
                seed,
                dims: (dim_lo, dim_hi),
                ..MatrixSuiteConfig::default()
            })?,
        };
        *slot = boxed(HeinzReport(report));
        Ok(())
    })
}

/// Total failures in `r`, or 0 for NULL.
#[no_mangle]
pub extern "C" fn heinz_report_failures(r: *const HeinzReport) -> usize {
    handle(r, "r").map_or(0, |r| r.0.failures_total)
}

/// Total evaluations in `r`, or 0 for NULL.
#[no_mangle]
pub extern "C" fn heinz_report_evaluations(r: *const HeinzReport) -> usize {
    handle(r, "r").map_or(0, |r| r.0.evaluations)
}

/// JSON rendering of `r`, released with [`heinz_string_free`]. NULL if `r`
/// is NULL.
#[no_mangle]
pub extern "C" fn heinz_report_json(r: *const HeinzReport) -> *mut c_char {
    match handle(r, "r") {
        Ok(r) => CString::new(r.0.to_json()).map_or(ptr::null_mut(), CString::into_raw),
        Err(_) => ptr::null_mut(),
    }
}

/// # Safety
/// `r` must be NULL or a report from this library that is not yet freed.
#[no_mangle]
pub unsafe extern "C" fn heinz_report_free(r: *mut HeinzReport) {
    if !r.is_null() {
        // SAFETY: produced by Box::into_raw in this library.
        drop(unsafe { Box::from_raw(r) });
    }
}

/// # Safety
/// `s` must be NULL or a string returned by this library that is not yet
/// freed.
#[no_mangle]
pub unsafe extern "C" fn heinz_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: produced by CString::into_raw in this library.
        drop(unsafe { CString::from_raw(s) });
    }
}
