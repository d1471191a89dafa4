//! Truncated power series over O = Z_l[π] in the 𝔪-adic topology, their Gauss
//! norms, and exterior calculus on the open polydisk.

pub mod error;
pub mod field;
pub mod forms;
pub mod json;
pub mod mono;
pub mod series;

pub use error::{Result, SeriesError};
pub use field::VectorField;
pub use forms::{antiderivative, contract, dlog, exterior_d, exterior_d_any, exterior_d_form, pullback, wedge, DiffForm};
pub use mono::Mono;
pub use series::{format_coeff, GaussNorm, TruncSeries};
