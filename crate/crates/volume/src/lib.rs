//! The volume 1-cocycle at finite level: conjugation data, the twist defect
//! σ ↦ Ψ₃(ρ(d) − a⁻¹F_h(φρ(c))), and audits of its independence of choices,
//! the cocycle identity and restriction to subgroups.

pub mod audit;
pub mod defect;
pub mod error;
pub mod linalg;
pub mod ringaut;
pub mod setup;

pub use audit::{chain_shift_audit, cocycle_audit, h_independence, lift_independence, restrict, restriction_audit, subgroup, AuditJson, AuditLine};
pub use defect::{Ambiguity, AmbiguityJson, ChainEvaluator, Volume, VolumeJson, VolumeResult};
pub use error::{Result, VolError};
pub use linalg::{intertwiner, normalize_determinant};
pub use ringaut::RingAutomorphism;
pub use setup::{ConjugationDatum, DatumJson, RepJson, SetupJson, VolumeSetup};
