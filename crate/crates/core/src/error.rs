use thiserror::Error;

/// Errors raised by basis construction, grids, assembly and analysis.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain where the operation is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// A caller violated an operation's contract (sizes, counts, ranges).
    #[error("contract violation: {0}")]
    Contract(String),

    /// The collocation matrix is singular to working precision.
    #[error("singular system (condition estimate {condition:.3e}): {reason}")]
    Singular { condition: f64, reason: String },

    /// A problem definition could not be parsed or looked up.
    #[error("problem definition: {0}")]
    Problem(String),

    /// An arithmetic expression failed to parse or evaluate.
    #[error("expression `{expr}`: {reason}")]
    Expression { expr: String, reason: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn contract(msg: impl Into<String>) -> Error {
    Error::Contract(msg.into())
}
