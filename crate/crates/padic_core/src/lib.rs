//! Finite-precision arithmetic in O = Z_l[π] and its fraction field, together
//! with the digit and factorial valuation estimates used to certify truncated
//! sums elsewhere in the workspace.

pub mod analytic;
pub mod digits;
pub mod error;
pub mod matrix;
pub mod ring;
pub mod scalar;

pub use analytic::{hensel_root, linear_minus_valuation, padic_log, teichmuller};
pub use digits::{
    cap_n, digit_count, digit_linear_sup, digit_stats, factorial_valuation, multinomial_bound_by_degree,
    multinomial_valuation, multinomial_valuation_bound, tail_min, DigitSup,
};
pub use error::{PadicError, Result};
pub use matrix::Mat;
pub use ring::{is_prime, val_u64, Elt, Ring, RingSpec, MAX_E};
pub use scalar::{fmt_rational, parse_rational, rational_valuation, ExactRational, PadicScalar, EXACT};
