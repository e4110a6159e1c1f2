//! Crate-wide error type.

/// Errors produced by space, polynomial, bound and estimator operations.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A vector or coefficient had the wrong dimension.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// An input contained NaN or infinity where a finite value is required.
    #[error("non-finite value in {0}")]
    NonFinite(String),

    /// A parameter violated a documented precondition.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The requested closed form does not exist for this space pair;
    /// callers should fall back to the numeric method.
    #[error("no closed form for {0}; use the numeric method")]
    NoClosedForm(String),

    /// Root bracketing failed (pathological Orlicz function or degenerate
    /// input).
    #[error("bracketing failed: {0}")]
    Bracketing(String),

    /// Text input (space grammar, ψ expression, polynomial file) failed to
    /// parse.
    #[error("parse error: {0}")]
    Parse(String),

    /// A desk-scale guardrail was hit without the override flag.
    #[error("guardrail: {0}")]
    Guardrail(String),
}

pub type Result<T> = std::result::Result<T, Error>;
