use bar_chains::ChainError;
use padic_core::PadicError;
use regulator::RegError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum VolError {
    #[error("no intertwiner: every solution vanishes modulo the maximal ideal")]
    NoIntertwiner,
    #[error("intertwining solutions exist but none is invertible")]
    NonInvertibleOnly,
    #[error("exponent {0} is divisible by the residue characteristic")]
    BadExponent(u64),
    #[error("no root of the required residue")]
    NoRoot,
    #[error("twisted cycle is not a boundary")]
    NotABoundary,
    #[error("not compatible: {0}")]
    NotCompatible(String),
    #[error("invalid conjugation datum: {0}")]
    InvalidDatum(String),
    #[error("shape: {0}")]
    Shape(String),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Regulator(#[from] RegError),
    #[error(transparent)]
    Padic(#[from] PadicError),
}

pub type Result<T> = std::result::Result<T, VolError>;
