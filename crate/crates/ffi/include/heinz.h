#ifndef HEINZ_H
#define HEINZ_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HeinzStatus {
  HEINZ_STATUS_OK = 0,
  HEINZ_STATUS_DOMAIN = 1,
  HEINZ_STATUS_USAGE = 2,
  HEINZ_STATUS_BOUNDARY = 3,
  HEINZ_STATUS_DIMENSION = 4,
  HEINZ_STATUS_NOT_HERMITIAN = 5,
  HEINZ_STATUS_NOT_POSITIVE = 6,
  HEINZ_STATUS_SINGULAR = 7,
  HEINZ_STATUS_NO_CONVERGENCE = 8,
  HEINZ_STATUS_QUADRATURE = 9,
  HEINZ_STATUS_NUMERICAL = 10,
  HEINZ_STATUS_NULL_POINTER = 11,
  HEINZ_STATUS_INVALID_UTF8 = 12,
  HEINZ_STATUS_PANIC = 13,
} HeinzStatus;

typedef enum HeinzSuite {
  HEINZ_SUITE_SCALAR = 0,
  HEINZ_SUITE_MATRIX = 1,
} HeinzSuite;

// Opaque Hermitian matrix.
typedef struct HeinzHermitian HeinzHermitian;

// Opaque verification report.
typedef struct HeinzReport HeinzReport;

// One evaluated inequality. `holds` is nonzero when the inequality is
// satisfied within tolerance.
typedef struct HeinzOutcome {
  double lhs;
  double rhs;
  double margin;
  bool holds;
} HeinzOutcome;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or NULL if none.
// The pointer stays valid until the next failing call on the same thread.
const char *heinz_last_error(void);

// `H_t(a, b)`.
enum HeinzStatus heinz_mean(double a, double b, double t, double *result);

// `K_t(a, b)`.
enum HeinzStatus heinz_heron_mean(double a, double b, double t, double *result);

// The quadratic through `H_0`, `H_tau`, `H_1`, evaluated at `t`.
enum HeinzStatus heinz_interpolator(double a, double b, double tau, double t, double *result);

enum HeinzStatus heinz_f_ratio(double c, double t, double *result);

enum HeinzStatus heinz_mult_ratio(double c, double t, double *result);

// Evaluates the scalar relation called `name` (for example
// `"CORE_COMPARISON"`). Two-parameter relations read `nu` and `tau`;
// the others read `t`.
//
// # Safety
// `name` must be NULL or a NUL-terminated string.
enum HeinzStatus heinz_scalar_relation(const char *name,
                                       double a,
                                       double b,
                                       double t,
                                       double nu,
                                       double tau,
                                       struct HeinzOutcome *result);

// Root of `8 tau^3 - 12 tau^2 + 1` in `(0, 1/2)`.
enum HeinzStatus heinz_tau_star(double tol, double *tau, double *residual);

// `int_0^{1/2} |H_t(1, b) - F_tau(t)| dt`.
enum HeinzStatus heinz_l1_error(double b, double tau, double quad_tol, double *result);

enum HeinzStatus heinz_minimize_l1(double b, double quad_tol, double *tau, double *value);

enum HeinzStatus heinz_counterexample(double *lhs, double *rhs, bool *violated);

// Builds an `n x n` Hermitian matrix from row-major real and imaginary
// parts. `im` may be NULL for a real symmetric matrix.
//
// # Safety
// `re` (and `im` when non-null) must point to `n * n` readable doubles.
enum HeinzStatus heinz_hermitian_new(size_t n,
                                     const double *re,
                                     const double *im,
                                     struct HeinzHermitian **result);

// Seeded random positive definite matrix with condition number below
// `cond_cap`.
enum HeinzStatus heinz_hermitian_random_pd(size_t n,
                                           uint64_t seed,
                                           double cond_cap,
                                           struct HeinzHermitian **result);

// # Safety
// `m` must be NULL or a handle from this library that is not yet freed.
void heinz_hermitian_free(struct HeinzHermitian *m);

// Dimension of `m`, or 0 for NULL.
size_t heinz_hermitian_dim(const struct HeinzHermitian *m);

// Writes the eigenvalues of `m` in descending order into `values`, which
// must hold `len >= n` doubles.
//
// # Safety
// `values` must point to `len` writable doubles.
enum HeinzStatus heinz_hermitian_eigenvalues(const struct HeinzHermitian *m,
                                             double *values,
                                             size_t len);

// Copies the row-major entries of `m` into `re` and `im` (either may be
// NULL), each holding `len >= n * n` doubles.
//
// # Safety
// Non-null `re` and `im` must point to `len` writable doubles.
enum HeinzStatus heinz_hermitian_entries(const struct HeinzHermitian *m,
                                         double *re,
                                         double *im,
                                         size_t len);

// `A #_t B`.
enum HeinzStatus heinz_geo_mean(const struct HeinzHermitian *a,
                                const struct HeinzHermitian *b,
                                double t,
                                struct HeinzHermitian **result);

// `(A #_t B + A #_{1-t} B) / 2`.
enum HeinzStatus heinz_matrix_heinz(const struct HeinzHermitian *a,
                                    const struct HeinzHermitian *b,
                                    double t,
                                    struct HeinzHermitian **result);

// Runs a verification suite with default tolerances. `dim_lo..=dim_hi`
// is ignored for the scalar suite.
enum HeinzStatus heinz_run_suite(enum HeinzSuite suite,
                                 size_t trials,
                                 uint64_t seed,
                                 size_t dim_lo,
                                 size_t dim_hi,
                                 struct HeinzReport **result);

// Total failures in `r`, or 0 for NULL.
size_t heinz_report_failures(const struct HeinzReport *r);

// Total evaluations in `r`, or 0 for NULL.
size_t heinz_report_evaluations(const struct HeinzReport *r);

// JSON rendering of `r`, released with [`heinz_string_free`]. NULL if `r`
// is NULL.
char *heinz_report_json(const struct HeinzReport *r);

// # Safety
// `r` must be NULL or a report from this library that is not yet freed.
void heinz_report_free(struct HeinzReport *r);

// # Safety
// `s` must be NULL or a string returned by this library that is not yet
// freed.
void heinz_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HEINZ_H */
