use bar_chains::ChainError;
use flows::FlowError;
use padic_core::PadicError;
use regulator::RegError;
use serde_json::json;
use series_ring::SeriesError;
use symplectic_k2::SympError;
use std::fmt;
use volume::VolError;

/// Exit codes.
pub const OK: i32 = 0;
pub const VALIDATION: i32 = 2;
pub const PRECISION: i32 = 3;
pub const MATH: i32 = 4;

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub kind: String,
    pub message: String,
}

impl CliError {
    pub fn new(code: i32, kind: &str, message: impl Into<String>) -> Self {
        CliError { code, kind: kind.to_string(), message: message.into() }
    }

    pub fn validation(message: impl Into<String>) -> Self {
        Self::new(VALIDATION, "Validation", message)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({"error": {"kind": self.kind, "message": self.message, "exit_code": self.code}})
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind, self.message)
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

fn variant<E: fmt::Debug>(e: &E) -> String {
    let s = format!("{e:?}");
    s.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("Error").to_string()
}

fn classify<E: fmt::Debug + fmt::Display>(e: &E, code: i32) -> CliError {
    CliError::new(code, &variant(e), e.to_string())
}

impl From<PadicError> for CliError {
    fn from(e: PadicError) -> Self {
        let code = match e {
            PadicError::PrecisionExhausted { .. } => PRECISION,
            PadicError::NotUnit | PadicError::NoRoot => MATH,
            _ => VALIDATION,
        };
        classify(&e, code)
    }
}

impl From<SeriesError> for CliError {
    fn from(e: SeriesError) -> Self {
        let code = match &e {
            SeriesError::Padic(p) => return CliError::from(p.clone()),
            SeriesError::NonUnit | SeriesError::NotContracting(_) | SeriesError::DegreeTooHigh(_) | SeriesError::NotClosed { .. } => MATH,
            _ => VALIDATION,
        };
        classify(&e, code)
    }
}

impl From<FlowError> for CliError {
    fn from(e: FlowError) -> Self {
        let code = match e {
            FlowError::Series(s) => return s.into(),
            FlowError::Padic(p) => return p.into(),
            FlowError::Inconclusive(_) => PRECISION,
            FlowError::CertificateMismatch => VALIDATION,
            _ => MATH,
        };
        classify(&e, code)
    }
}

impl From<ChainError> for CliError {
    fn from(e: ChainError) -> Self {
        let code = match e {
            ChainError::Padic(p) => return p.into(),
            ChainError::NotACycle | ChainError::NoSolution | ChainError::NotACocycle(..) | ChainError::NotAHomomorphism(..) => MATH,
            _ => VALIDATION,
        };
        classify(&e, code)
    }
}

impl From<RegError> for CliError {
    fn from(e: RegError) -> Self {
        let code = match e {
            RegError::Padic(p) => return p.into(),
            RegError::Chain(c) => return c.into(),
            RegError::PrecisionExhausted { .. } => PRECISION,
            RegError::DepthZero => MATH,
            _ => VALIDATION,
        };
        classify(&e, code)
    }
}

impl From<SympError> for CliError {
    fn from(e: SympError) -> Self {
        let code = match e {
            SympError::Chain(c) => return c.into(),
            SympError::Series(s) => return s.into(),
            SympError::Padic(p) => return p.into(),
            SympError::Shape(_) => VALIDATION,
            _ => MATH,
        };
        classify(&e, code)
    }
}

impl From<VolError> for CliError {
    fn from(e: VolError) -> Self {
        let code = match e {
            VolError::Chain(c) => return c.into(),
            VolError::Regulator(r) => return r.into(),
            VolError::Padic(p) => return p.into(),
            VolError::Shape(_) | VolError::InvalidDatum(_) | VolError::BadExponent(_) => VALIDATION,
            _ => MATH,
        };
        classify(&e, code)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::new(VALIDATION, "Parse", e.to_string())
    }
}
