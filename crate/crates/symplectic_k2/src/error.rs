use bar_chains::ChainError;
use padic_core::PadicError;
use series_ring::SeriesError;
use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum SympError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("value at element {0} is not trace zero")]
    NotTraceZero(u32),
    #[error("not a 2-cocycle: fails at ({0}, {1}, {2})")]
    NotACocycle(u32, u32, u32),
    #[error("det ρ({0}) differs from ε({0})")]
    DeterminantMismatch(u32),
    #[error("not a character: fails at ({0}, {1})")]
    NotACharacter(u32, u32),
    #[error("2-form is degenerate at the closed fiber")]
    Degenerate,
    #[error("pullback of ω is not χ⁻¹·ω")]
    NotConformal,
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Padic(#[from] PadicError),
}

pub type Result<T> = std::result::Result<T, SympError>;
