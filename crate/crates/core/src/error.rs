use thiserror::Error;

/// Errors raised by the multiplicity and volume engines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Inputs outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// The search exceeded its configured filling budget before finishing.
    #[error("compute budget exceeded: more than {budget} fillings would be counted")]
    Budget { budget: u64 },
    /// A postcondition check failed; indicates a bug, never a legitimate answer.
    #[error("internal consistency failure: {0}")]
    Consistency(String),
    /// The operation is not implemented for the requested Lie type or size.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// Malformed textual input (weights, Lie types, JSON records).
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
