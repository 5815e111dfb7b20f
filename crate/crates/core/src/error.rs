//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An angle fell outside the valid field of view.
    #[error("invalid angle: {0}")]
    InvalidAngle(String),

    /// A statistical or geometric parameter violated its domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A scenario description is internally inconsistent.
    #[error("invalid scenario: {0}")]
    InvalidScenario(String),

    /// Matrix/vector dimensions do not line up.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// A numerical operation failed or produced non-finite values.
    #[error("numerical error: {0}")]
    Numerical(String),

    /// An operation was invoked in an invalid order.
    #[error("state error: {0}")]
    State(String),

    /// A batch cannot be used to derive loss weights.
    #[error("degenerate batch: {0}")]
    DegenerateBatch(String),

    /// A configuration file or key could not be parsed.
    #[error("config error: {0}")]
    Config(String),

    /// Checkpoint or dataset serialization failure.
    #[error("format error: {0}")]
    Format(String),

    /// Input sequences were empty or otherwise unusable.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}
