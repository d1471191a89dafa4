use crate::series::TruncSeries;
use padic_core::PadicError;
use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum SeriesError {
    #[error("constant term is not a unit")]
    NonUnit,
    #[error("series live in different rings or have different numbers of variables")]
    VarMismatch,
    #[error("substitution component {0} does not map 𝔪 into 𝔪")]
    NotContracting(usize),
    #[error("exterior derivative of a form of degree {0} is not available")]
    DegreeTooHigh(usize),
    #[error("form is not closed: d/dx{i} of component {j} differs from d/dx{j} of component {i}")]
    NotClosed { i: usize, j: usize, residual: Box<TruncSeries> },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("exponent too large for the packed monomial representation")]
    ExponentOverflow,
    #[error("bad radius exponent: needs 0 < a ≤ 1/e")]
    BadRadius,
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Padic(#[from] PadicError),
}

pub type Result<T> = std::result::Result<T, SeriesError>;
