use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degree {degree} exceeds the supported maximum {max}")]
    Capacity { degree: u32, max: u32 },

    #[error("star product of two exponential symbols does not terminate")]
    UnsupportedOperands,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported symbol: {0}")]
    Unsupported(String),

    #[error("operator is not Hermitian: {0}")]
    NotHermitian(String),

    #[error("commutator series does not terminate: c^({order}) is nonzero")]
    NonTerminating { order: usize },

    #[error("no solution within {iterations} iterations, best residual {best_residual:.3e}")]
    Convergence { iterations: usize, best_residual: f64 },

    #[error("quadrature did not reach tolerance {target:.1e}, error estimate {estimate:.3e}")]
    Accuracy { target: f64, estimate: f64 },

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("parse error: {0}")]
    Parse(String),
}
