use padic_core::PadicError;
use series_ring::SeriesError;
use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum FlowError {
    #[error("map is only congruent to the identity modulo 𝔪^{0}; need 𝔪^2")]
    CongruenceTooWeak(i64),
    #[error("time outside the certified region: {0}")]
    OutsideRegion(String),
    #[error("certificate was issued for a different map")]
    CertificateMismatch,
    #[error("vector field too large on the radius: log-norm {have} < {need}")]
    NormViolation { have: String, need: String },
    #[error("component {0} vanishes only to working precision")]
    Inconclusive(usize),
    #[error("map does not send 𝔪 into 𝔪 or is not invertible modulo 𝔪^2")]
    NotAnAutomorphism,
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Padic(#[from] PadicError),
}

pub type Result<T> = std::result::Result<T, FlowError>;
