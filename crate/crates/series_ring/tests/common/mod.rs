#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use padic_core::{PadicScalar, Ring, RingSpec};
use series_ring::{Mono, TruncSeries};
use std::collections::BTreeMap;

pub fn ring(ell: u64, prec: u32) -> Ring {
    Ring::from_spec(&RingSpec::new(ell, prec)).unwrap()
}

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn s(r: &Ring, m: usize, n: i64, terms: &[(&[u32], i64)]) -> TruncSeries {
    TruncSeries::from_int_terms(r, m, n, terms).unwrap()
}

/// Exact polynomial with rational coefficients, used as an independent oracle.
#[derive(Clone, Debug, Default)]
pub struct Poly(pub BTreeMap<Vec<u32>, BigRational>);

impl Poly {
    pub fn from_terms(terms: &[(Vec<u32>, i64)]) -> Self {
        let mut p = Poly::default();
        for (e, c) in terms {
            p.add_term(e.clone(), BigRational::from_integer(BigInt::from(*c)));
        }
        p
    }

    pub fn add_term(&mut self, e: Vec<u32>, c: BigRational) {
        let x = self.0.entry(e.clone()).or_insert_with(BigRational::zero);
        *x += c;
        if x.is_zero() {
            self.0.remove(&e);
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut p = self.clone();
        for (e, c) in &o.0 {
            p.add_term(e.clone(), c.clone());
        }
        p
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        let mut p = Poly::default();
        for (e, x) in &self.0 {
            p.add_term(e.clone(), x * c);
        }
        p
    }

    /// Product keeping total degree < cap.
    pub fn mul(&self, o: &Poly, cap: u32) -> Poly {
        let mut p = Poly::default();
        for (a, x) in &self.0 {
            for (b, y) in &o.0 {
                let e: Vec<u32> = a.iter().zip(b).map(|(i, j)| i + j).collect();
                if e.iter().sum::<u32>() < cap {
                    p.add_term(e, x * y);
                }
            }
        }
        p
    }

    pub fn deriv(&self, i: usize) -> Poly {
        let mut p = Poly::default();
        for (e, x) in &self.0 {
            if e[i] > 0 {
                let mut e2 = e.clone();
                e2[i] -= 1;
                p.add_term(e2, x * BigRational::from_integer(BigInt::from(e[i])));
            }
        }
        p
    }

    /// p(q_1, …, q_m) keeping total degree < cap.
    pub fn compose(&self, qs: &[Poly], cap: u32) -> Poly {
        let m2 = qs[0].0.keys().next().map_or(qs.len(), |k| k.len());
        let one = Poly::from_terms(&[(vec![0; m2], 1)]);
        let mut out = Poly::default();
        for (e, x) in &self.0 {
            let mut t = one.clone();
            for (j, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    t = t.mul(&qs[j], cap);
                }
            }
            out = out.add(&t.scale(x));
        }
        out
    }
}

/// Every coefficient of `f` agrees with the oracle modulo 𝔩^(n-|i|), and
/// every oracle term of weight below n appears in `f`.
pub fn matches(f: &TruncSeries, p: &Poly) -> bool {
    let r = f.ring();
    let n = f.n();
    let mut keys: Vec<Vec<u32>> = p.0.keys().cloned().collect();
    keys.extend(f.terms().map(|(k, _)| k.exps(f.m())));
    for e in keys {
        let k = Mono::from_exps(&e).unwrap();
        let want = p.0.get(&e).map(|c| PadicScalar::from_rational(r, c)).unwrap_or_else(|| PadicScalar::zero_to(r, padic_core::EXACT));
        let prec = n - k.degree();
        let got = f.coeff(k);
        if !got.truncate(prec).sub(&want.truncate(prec)).is_zero() {
            return false;
        }
    }
    true
}

pub fn to_poly(f: &TruncSeries) -> Poly {
    let mut p = Poly::default();
    for (k, c) in f.terms() {
        let v = c.to_bigint().expect("integral e = 1 coefficient");
        p.add_term(k.exps(f.m()), BigRational::from_integer(v));
    }
    p
}
