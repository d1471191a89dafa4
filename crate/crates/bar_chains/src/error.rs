use padic_core::PadicError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("chain is not a cycle")]
    NotACycle,
    #[error("cycle is not a boundary")]
    NoSolution,
    #[error("chain space has {0} basis tuples, above the limit")]
    TooLarge(u128),
    #[error("not a 1-cocycle: fails at ({0}, {1})")]
    NotACocycle(u32, u32),
    #[error("not a homomorphism: fails at ({0}, {1})")]
    NotAHomomorphism(u32, u32),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("bad modulus: {0}")]
    BadModulus(String),
    #[error("degree or modulus mismatch")]
    Mismatch,
    #[error("element {0} is not in the group")]
    BadElement(u32),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Padic(#[from] PadicError),
}

pub type Result<T> = std::result::Result<T, ChainError>;
