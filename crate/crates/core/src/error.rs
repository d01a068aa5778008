use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(String),

    #[error("spectrum has no positive levels")]
    EmptySpectrum,

    #[error("invalid chain operator: {0}")]
    InvalidOperator(String),

    #[error("division by zero: {0}")]
    DivisionByZero(String),

    /// A recursion step produced `j_index <= 0`; the level ordering was violated upstream.
    #[error("non-positive recursion entry j_{index} = {value}")]
    NonPositiveCoupling { index: usize, value: String },

    #[error("level {level} violates the recursion order: {reason}")]
    OrderingViolation { level: String, reason: String },

    #[error("eigensolver failed to converge: {0}")]
    ConvergenceFailure(String),

    #[error("dimension mismatch: expected {expected} sites, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// The floating-point spectrum of a chain is too close to degenerate for
    /// the recursion to reconstruct it.
    #[error("float round trip broke down: {0}")]
    OrderingBreakdown(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
