use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The caller combined arguments in a way the operation does not accept.
    #[error("usage error: {0}")]
    Usage(String),

    #[error("parameters lie in the boundary band (|nu - r(tau)| or |nu - R(tau)| < {delta}); pass allow_boundary to evaluate")]
    BoundaryRegion { delta: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: String, found: String },

    #[error("matrix is not Hermitian (asymmetry {asymmetry:e} exceeds {limit:e})")]
    NotHermitian { asymmetry: f64, limit: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("matrix is singular where an inverse power is required")]
    Singular,

    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal residual {residual:e})")]
    NoConvergence { sweeps: usize, residual: f64 },

    #[error("quadrature did not reach tolerance {tolerance:e} within its subdivision budget (best estimate {estimate}, error estimate {error_estimate:e})")]
    Quadrature {
        estimate: f64,
        error_estimate: f64,
        tolerance: f64,
    },

    #[error("numerical error: {0}")]
    Numerical(String),
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
