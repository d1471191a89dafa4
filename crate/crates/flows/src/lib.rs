//! Iterates, logarithms and flows of self-maps of the open polydisk, together
//! with the symplectic operations on vector fields.

pub mod error;
pub mod field_ops;
pub mod flow;
pub mod interp;
pub mod map;
pub mod tpoly;

pub use error::{FlowError, Result};
pub use field_ops::{field_bracket, hamiltonian_potential, is_critical, lie_derivative, lie_derivative_limit, poisson};
pub use flow::{flow_from_field, FlowSeries};
pub use interp::{
    binomial_rational, certify, interpolate_iterate, log_field_norm_bound, vector_field_log, Basis, CertificateJson,
    ConvergenceCertificate, Time,
};
pub use map::{delta_power, delta_powers, SeriesMap};
pub use series_ring::VectorField;
pub use tpoly::{compose_into, iterate_tpoly, TPoly};
