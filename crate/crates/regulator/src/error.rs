use bar_chains::ChainError;
use padic_core::PadicError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegError {
    #[error("tuple has depth 0: some g_i is not congruent to 1 modulo 𝔩")]
    DepthZero,
    #[error("entry {0} is not in the congruence kernel")]
    NotInK1(usize),
    #[error("bad tuple: {0}")]
    BadTuple(String),
    #[error("too large: {0}")]
    TooLarge(String),
    #[error("precision exhausted: certified to {achieved} (𝔩-units), wanted {wanted}")]
    PrecisionExhausted { achieved: i64, wanted: i64 },
    #[error("coefficient of degree {0} fails the membership bound")]
    Membership(u32),
    #[error(transparent)]
    Padic(#[from] PadicError),
    #[error(transparent)]
    Chain(#[from] ChainError),
}

pub type Result<T> = std::result::Result<T, RegError>;
