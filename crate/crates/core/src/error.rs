//! Error types shared across the crate.

use thiserror::Error;

/// Errors produced by triplet construction and numerical operations.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A precondition on the inputs is violated (invalid parameter,
    /// wrong representation, operation outside its domain).
    #[error("domain error: {0}")]
    Domain(String),

    /// A quadrature or limit computation failed to reach the requested
    /// tolerance. `estimate` is the achieved error estimate.
    #[error("numerical failure: {message} (achieved error estimate {estimate:.3e})")]
    Numerical { message: String, estimate: f64 },

    /// A detector could not decide between convergence and divergence
    /// within its budget.
    #[error("inconclusive: {0}")]
    Inconclusive(String),

    /// An improper stochastic-integral exponent does not converge at the
    /// evaluated argument.
    #[error("not definable at this argument: {message} (last partial {partial_re:.6e}{partial_im:+.6e}i)")]
    NotDefinable {
        message: String,
        partial_re: f64,
        partial_im: f64,
    },

    /// The representation does not support the requested operation.
    #[error("unsupported representation: {0}")]
    Unsupported(String),

    /// Malformed spec file or report input.
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn numerical(msg: impl Into<String>, estimate: f64) -> Self {
        Error::Numerical {
            message: msg.into(),
            estimate,
        }
    }

    pub fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
