use thiserror::Error;

/// Errors reported by the library's checked entry points.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("input must not be empty")]
    EmptyInput,

    #[error("n = {n} is too small, need at least {min}")]
    DegreeTooSmall { n: usize, min: usize },

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("length {0} is not a power of two")]
    NonPowerOfTwo(usize),

    #[error("{name} = {value} is outside {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("{0} must be finite")]
    NonFinite(&'static str),

    #[error("grid values must be finite, strictly increasing and within [0, 1]")]
    InvalidGrid,
}

pub type Result<T> = std::result::Result<T, Error>;
