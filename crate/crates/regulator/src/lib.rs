//! Truncated evaluation of the regulator cocycle Φ̃_3 on K_1 = ker(GL_d(O) → GL_d(F_l)),
//! its transfer Ψ_3 to GL_d(O), and evaluation on bar 3-chains.

pub mod engine;
pub mod error;
pub mod expansion;
pub mod transfer;

pub use error::{RegError, Result};
pub use expansion::{
    depth, k1_shift, min_cutoff, phi_partial, phi_s, phi_tilde, rebase, simplex_weight, t_expansion, tail_bound, RegulatorJson,
    RegulatorValue, TExpansion,
};
pub use transfer::{evaluate_chain, gl_residue_group, psi_transfer, transfer_supported, ResMat};
