#![allow(dead_code)]

use bar_chains::{AdCocycle, BarChain, FiniteGroup, GroupCtx, MatrixRep, Modulus};
use padic_core::{Mat, PadicScalar, Ring, RingSpec};
use series_ring::{DiffForm, Mono, TruncSeries};

pub fn ring(ell: u64, prec: u32) -> Ring {
    Ring::from_spec(&RingSpec::new(ell, prec)).unwrap()
}

pub fn mat(r: &Ring, rows: &[&[i64]]) -> Mat {
    Mat::from_rows(r, &rows.iter().map(|x| x.to_vec()).collect::<Vec<_>>()).unwrap()
}

/// (Z/3)² with a = 1, b = 3.
pub const A: u32 = 1;
pub const B: u32 = 3;

pub fn c3(r: &Ring) -> Mat {
    mat(r, &[&[0, -1], &[1, -1]])
}

/// ρ₀(a) = C of order 3, ρ₀(b) = 1, over Z/81, with a family of cocycles
/// c(a) = Ad(a)Z - Z, c(b) = λ·27(2C + 1).
pub fn z33_setup() -> (FiniteGroup, MatrixRep, Vec<AdCocycle>) {
    let r = ring(3, 4);
    let g = FiniteGroup::abelian(&[3, 3]).unwrap();
    let rep = MatrixRep::from_generators(&g, &r, &[A, B], &[c3(&r), Mat::identity(&r, 2)]).unwrap();
    let y = mat(&r, &[&[27, -54], &[54, -27]]);
    let mut out = Vec::new();
    for (x0, x1, x2) in [(1i64, 0i64, 0i64), (0, 1, 0), (2, 1, 5), (1, 1, -1), (4, -7, 2)] {
        let z = mat(&r, &[&[x0, x1], &[x2, -x0]]);
        let x = AdCocycle::coboundary(&g, &rep, &z).unwrap().value(A).clone();
        for lam in [0i64, 1, 2] {
            if let Ok(c) = AdCocycle::from_generators(&g, &rep, &[A, B], &[x.clone(), y.scale(&r, r.from_i64(lam))]) {
                out.push(c);
            }
        }
    }
    (g, rep, out)
}

/// The standard 2-dimensional representation of S₃ over Z/81 and some
/// trace-zero coboundaries.
pub fn s3_setup() -> (FiniteGroup, MatrixRep, Vec<AdCocycle>) {
    let r = ring(3, 4);
    let g = FiniteGroup::symmetric(3).unwrap();
    let order = |x: u32| (1..=6u64).find(|&k| g.pow(x, k) == 0).unwrap();
    let c = g.elements().find(|&x| order(x) == 3).unwrap();
    let t = g.elements().find(|&x| order(x) == 2).unwrap();
    let rep = MatrixRep::from_generators(&g, &r, &[c, t], &[c3(&r), mat(&r, &[&[0, 1], &[1, 0]])]).unwrap();
    let out = [[1i64, 2, 0], [0, 1, 1], [5, -3, 2]]
        .iter()
        .map(|v| AdCocycle::coboundary(&g, &rep, &mat(&r, &[&[v[0], v[1]], &[v[2], -v[0]]])).unwrap())
        .collect();
    (g, rep, out)
}

/// [a|b] - [b|a].
pub fn commutator_cycle(m: Modulus) -> BarChain {
    BarChain::from_terms(2, m, &[(&[A, B], 1), (&[B, A], -1)]).unwrap()
}

/// 27·Σ_i [a|a^i], the Tor cycle modulo 81.
pub fn tor_cycle(g: &FiniteGroup, m: Modulus) -> BarChain {
    BarChain::from_terms(2, m, &[(&[A, 0], 27), (&[A, A], 27), (&[A, g.mul(A, A)], 27)]).unwrap()
}

pub fn series(r: &Ring, m: usize, n: i64, terms: &[(&[u32], i64)]) -> TruncSeries {
    TruncSeries::from_int_terms(r, m, n, terms).unwrap()
}

pub fn area(r: &Ring, n: i64) -> DiffForm {
    DiffForm::from_components(r, 2, 2, vec![(vec![0, 1], TruncSeries::one(r, 2, n))]).unwrap()
}

pub fn coeff(f: &TruncSeries, e: &[u32]) -> PadicScalar {
    f.coeff(Mono::from_exps(e).unwrap())
}
