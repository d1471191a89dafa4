#![allow(dead_code)]

use bar_chains::{BarChain, FiniteGroup, GroupAutomorphism, GroupCtx, MatrixRep, Modulus};
use padic_core::{Mat, Ring, RingSpec};
use volume::{ConjugationDatum, RingAutomorphism, VolumeSetup};

pub const A: u32 = 1;
pub const B: u32 = 3;

pub fn ring(ell: u64, prec: u32) -> Ring {
    Ring::from_spec(&RingSpec::new(ell, prec)).unwrap()
}

pub fn mat(r: &Ring, rows: &[&[i64]]) -> Mat {
    Mat::from_rows(r, &rows.iter().map(|x| x.to_vec()).collect::<Vec<_>>()).unwrap()
}

pub fn c3(r: &Ring) -> Mat {
    mat(r, &[&[0, -1], &[1, -1]])
}

pub fn swap_mat(r: &Ring) -> Mat {
    mat(r, &[&[0, 1], &[1, 0]])
}

/// [a|b] − [b|a].
pub fn commutator(m: Modulus) -> BarChain {
    BarChain::from_terms(2, m, &[(&[A, B], 1), (&[B, A], -1)]).unwrap()
}

pub fn auto(g: &FiniteGroup, ia: u32, ib: u32) -> GroupAutomorphism {
    GroupAutomorphism::from_generator_images(g, &[A, B], &[ia, ib]).unwrap()
}

/// (Z/3)² → GL₂(Z/3^P), a ↦ C, b ↦ C², with C of order 3. The swap
/// a ↔ b is realized by h = [[0,1],[1,0]] and reverses the commutator cycle,
/// so it carries a = −1; inversion a ↦ a², b ↦ b² uses the same h with a = 1.
pub fn swap_setup(prec: u32) -> VolumeSetup {
    let r = ring(3, prec);
    let g = FiniteGroup::abelian(&[3, 3]).unwrap();
    let c = c3(&r);
    let rep = MatrixRep::from_generators(&g, &r, &[A, B], &[c.clone(), c.mul(&r, &c).unwrap()]).unwrap();
    let m = Modulus::new(3, prec).unwrap();
    let a2 = g.mul(A, A);
    let b2 = g.mul(B, B);
    let swap = ConjugationDatum::new(auto(&g, B, A), swap_mat(&r), -1, RingAutomorphism::identity());
    let inv = ConjugationDatum::new(auto(&g, a2, b2), swap_mat(&r), 1, RingAutomorphism::identity());
    VolumeSetup::new(g, rep, commutator(m), vec![swap, inv]).unwrap()
}

pub fn zeta_ring(prec: u32) -> Ring {
    Ring::from_spec(&RingSpec::ramified(3, vec![3, 3], prec)).unwrap()
}

/// Standard 2-dimensional representation of S₃ and its two generators
/// (3-cycle, transposition).
pub fn s3_rep(r: &Ring) -> (FiniteGroup, MatrixRep, u32, u32) {
    let g = FiniteGroup::symmetric(3).unwrap();
    let order = |x: u32| (1..=6u64).find(|&k| g.pow(x, k) == 0).unwrap();
    let c = g.elements().find(|&x| order(x) == 3).unwrap();
    let t = g.elements().find(|&x| order(x) == 2).unwrap();
    let rep = MatrixRep::from_generators(&g, r, &[c, t], &[c3(r), swap_mat(r)]).unwrap();
    (g, rep, c, t)
}

pub fn cutoff(prec: u32) -> u32 {
    regulator::min_cutoff(3, 1, 3, 1, prec as i64)
}
