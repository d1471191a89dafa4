use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PadicError {
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("precision exhausted: certified to {achieved} (l-units), wanted {wanted}")]
    PrecisionExhausted { achieved: i64, wanted: i64 },
    #[error("element is not a unit")]
    NotUnit,
    #[error("no root: residue does not lift")]
    NoRoot,
    #[error("exponent {0} is divisible by the residue characteristic")]
    BadExponent(u64),
    #[error("rings do not match")]
    RingMismatch,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("matrix shape mismatch")]
    Shape,
}

pub type Result<T> = std::result::Result<T, PadicError>;
