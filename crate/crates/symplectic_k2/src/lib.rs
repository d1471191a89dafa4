//! The symplectic side: Tr_alt and the group S(A) over a square-zero
//! extension, the 2-cocycle and cup-product routes to ω_ρ, dlog of symbol
//! lists, ρ₊ = ρ ⊕ ε⁻¹, and Poisson brackets of nondegenerate 2-forms.

pub mod algebra;
pub mod deformation;
pub mod error;
pub mod poisson;

pub use algebra::{s_group_mul, tr_alt, AElt, SElement, SquareZeroAlgebra, VMatrix, Wedge2, WedgeJson};
pub use deformation::{
    character_from_generators, check_kappa_cocycle, kappa, omega_from_deformation, omega_vs_cup, rho_plus, DeformationCocycle,
    OmegaReport,
};
pub use error::{Result, SympError};
pub use poisson::{check_conformal, dlog_symbols, form_on_fields, hamiltonian_field, is_nondegenerate, poisson_bracket, SymbolList};
