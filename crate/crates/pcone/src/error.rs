use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("zero vector is outside the domain of this operation")]
    ZeroVector,
    #[error("unsupported exponent: {0}")]
    UnsupportedExponent(String),
    #[error("exponent must be a finite real >= 1, got {0}")]
    InvalidExponent(f64),
    #[error("norm is not twice differentiable at this point (p in (1,2) with a zero coordinate)")]
    NotTwiceDifferentiable,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("cone is not polyhedral; extreme rays are only enumerated for p in {{1, inf}}")]
    NotPolyhedral,
    #[error("matrix is singular or too ill-conditioned to invert reliably")]
    Singular,
    #[error(
        "root finding did not converge after {iterations} iterations (residual {residual:.3e})"
    )]
    ConvergenceFailure { iterations: usize, residual: f64 },
    #[error("target point is not in the cone interior")]
    NotInterior,
    #[error("image does not lie on the target graph (defect {0:.3e})")]
    NotOnTargetGraph(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
