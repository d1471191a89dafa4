#![allow(dead_code)]

use flows::SeriesMap;
use num_bigint::BigInt;
use num_rational::BigRational;
use padic_core::{Ring, RingSpec};
use series_ring::TruncSeries;

pub fn ring(ell: u64, prec: u32) -> Ring {
    Ring::from_spec(&RingSpec::new(ell, prec)).unwrap()
}

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn s(r: &Ring, m: usize, n: i64, terms: &[(&[u32], i64)]) -> TruncSeries {
    TruncSeries::from_int_terms(r, m, n, terms).unwrap()
}

/// One-variable map x ↦ Σ c_k x^k from (k, c_k).
pub fn map1(r: &Ring, n: i64, terms: &[(u32, i64)]) -> SeriesMap {
    let exps: Vec<[u32; 1]> = terms.iter().map(|&(k, _)| [k]).collect();
    let t: Vec<(&[u32], i64)> = exps.iter().zip(terms).map(|(e, &(_, c))| (&e[..], c)).collect();
    SeriesMap::new(vec![s(r, 1, n, &t)]).unwrap()
}

/// Coefficients of x^0..x^(n-1) of a one-variable series as integers mod l^P.
pub fn ints(f: &TruncSeries) -> Vec<BigInt> {
    let mut out = Vec::new();
    for k in 0..f.n().max(0) as u32 {
        let c = f.coeff(series_ring::Mono::from_exps(&[k]).unwrap());
        out.push(c.to_bigint().unwrap_or_default());
    }
    out
}
