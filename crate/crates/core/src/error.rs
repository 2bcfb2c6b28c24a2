use thiserror::Error;

/// Errors raised by norm evaluation, derivative oracles, inequality checks and sampling.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A caller-supplied argument violates a precondition.
    #[error("argument: {0}")]
    Argument(String),

    /// Operand dimensions disagree.
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    /// A vector lies outside the conic domain of a norm.
    #[error("domain: {constraint}")]
    Domain { constraint: String },

    /// A numerical evaluation produced a non-finite value.
    #[error("evaluation: {0}")]
    Evaluation(String),

    /// Rejection sampling could not find enough points inside the cone.
    #[error("sampling exhausted for family {family}: acceptance rate below {rate:e}")]
    SamplingExhausted { family: String, rate: f64 },

    /// Something that the theory guarantees did not happen.
    #[error("internal invariant failure: {0}")]
    Internal(String),

    /// A document could not be parsed or validated.
    #[error("parse: {0}")]
    Parse(String),
}

impl Error {
    pub fn argument(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub fn domain(constraint: impl Into<String>) -> Self {
        Error::Domain {
            constraint: constraint.into(),
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
