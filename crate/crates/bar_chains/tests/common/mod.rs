#![allow(dead_code)]

use bar_chains::*;
use padic_core::{Mat, Ring, RingSpec};

pub fn md(ell: u64, k: u32) -> Modulus {
    Modulus::new(ell, k).unwrap()
}

pub fn ring(ell: u64, prec: u32) -> Ring {
    Ring::from_spec(&RingSpec::new(ell, prec)).unwrap()
}

pub fn s3() -> FiniteGroup {
    FiniteGroup::symmetric(3).unwrap()
}

/// (Z/3)² with generators a = 1, b = 3.
pub fn z33() -> FiniteGroup {
    FiniteGroup::abelian(&[3, 3]).unwrap()
}

pub const A: u32 = 1;
pub const B: u32 = 3;

/// [a|b] - [b|a].
pub fn commutator_cycle(m: Modulus) -> BarChain {
    BarChain::from_terms(2, m, &[(&[A, B], 1), (&[B, A], -1)]).unwrap()
}

pub fn chain(degree: usize, m: Modulus, order: u32, raw: &[(Vec<u32>, i64)]) -> BarChain {
    let mut c = BarChain::zero(degree, m);
    for (t, k) in raw {
        let t: Vec<u32> = t.iter().take(degree).map(|x| x % order).collect();
        if t.len() == degree {
            c.add_term(t, m.from_i64(*k));
        }
    }
    c
}

/// Companion matrix of x² + x + 1, of order 3.
pub fn c3(r: &Ring) -> Mat {
    Mat::from_rows(r, &[vec![0, -1], vec![1, -1]]).unwrap()
}
