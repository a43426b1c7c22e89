use thiserror::Error;

/// Errors raised by the model, the analytic evaluator and the optimizer.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument is outside the domain of the operation.
    #[error("domain error in {op}: {detail}")]
    Domain { op: &'static str, detail: String },

    /// The requested cache size leaves the SBS with no transmit power, or exceeds the library.
    #[error("infeasible cache size {cache}: {detail}")]
    InfeasibleCache { cache: usize, detail: String },

    /// A configuration key holds an invalid value.
    #[error("invalid configuration key `{key}`: {reason}")]
    InvalidConfig { key: String, reason: String },

    /// The configuration text could not be parsed.
    #[error("cannot parse configuration: {0}")]
    Parse(String),

    /// Writing a diagnostic or result file failed.
    #[error("i/o error: {0}")]
    Io(String),

    /// Adaptive quadrature did not reach the requested tolerance.
    #[error(
        "quadrature did not converge in {context}: value {value:e}, estimated error {abs_error:e} after {evaluations} evaluations"
    )]
    Quadrature {
        context: String,
        value: f64,
        abs_error: f64,
        evaluations: usize,
    },
}

impl Error {
    pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            op,
            detail: detail.into(),
        }
    }

    pub(crate) fn config(key: &str, reason: impl Into<String>) -> Self {
        Error::InvalidConfig {
            key: key.to_string(),
            reason: reason.into(),
        }
    }

    /// Returns the offending key for configuration errors.
    pub fn config_key(&self) -> Option<&str> {
        match self {
            Error::InvalidConfig { key, .. } => Some(key),
            _ => None,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
