//! Bar chains of finite groups and of matrix groups over O/𝔩^P, the
//! conjugation homotopy F_h, boundary solving over Z/l^k, and the pairing of
//! adjoint 1-cocycles on 2-cycles.

pub mod chain;
pub mod cocycle;
pub mod error;
pub mod group;
pub mod modulus;
pub mod solver;

pub use chain::{boundary, homotopy, inn, tuples, BarChain, ChainJson, ChainTermJson};
pub use cocycle::{coeff_in_ring, cup_cochain, cup_pair, AdCocycle, MatrixRep};
pub use error::{ChainError, Result};
pub use group::{FiniteGroup, GroupAutomorphism, GroupCtx, GroupSpec, MatrixGroup};
pub use modulus::Modulus;
pub use solver::{homology_divisors, smith_valuations, solve_boundary, BoundarySolver, Homology, SolverCache, MAX_COLUMNS};
