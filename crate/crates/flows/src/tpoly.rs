//! Polynomials in the time variable with series coefficients, used to compare
//! d/dt ψ^t with X_ψ(ψ^t) coefficient by coefficient.

use crate::error::{FlowError, Result};
use crate::map::{delta_powers, SeriesMap};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use padic_core::{PadicScalar, Ring};
use series_ring::TruncSeries;
use std::collections::HashMap;

/// Σ_j f_j t^j.
#[derive(Clone, Debug)]
pub struct TPoly {
    ring: Ring,
    m: usize,
    coeffs: Vec<TruncSeries>,
}

impl TPoly {
    pub fn constant(f: TruncSeries) -> Self {
        TPoly { ring: f.ring().clone(), m: f.m(), coeffs: vec![f] }
    }

    pub fn from_coeffs(ring: &Ring, m: usize, coeffs: Vec<TruncSeries>) -> Self {
        TPoly { ring: ring.clone(), m, coeffs }
    }

    pub fn coeffs(&self) -> &[TruncSeries] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, j: usize) -> TruncSeries {
        self.coeffs.get(j).cloned().unwrap_or_else(|| TruncSeries::zero(&self.ring, self.m, padic_core::EXACT))
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        let len = self.coeffs.len().max(o.coeffs.len());
        let coeffs = (0..len).map(|j| self.coeff(j).add(&o.coeff(j))).collect::<std::result::Result<_, _>>()?;
        Ok(TPoly { ring: self.ring.clone(), m: self.m, coeffs })
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return Ok(TPoly { ring: self.ring.clone(), m: self.m, coeffs: vec![] });
        }
        let mut coeffs = vec![TruncSeries::zero(&self.ring, self.m, padic_core::EXACT); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b)?)?;
            }
        }
        Ok(TPoly { ring: self.ring.clone(), m: self.m, coeffs })
    }

    pub fn scale(&self, c: &PadicScalar) -> Self {
        TPoly { ring: self.ring.clone(), m: self.m, coeffs: self.coeffs.iter().map(|f| f.scale(c)).collect() }
    }

    /// d/dt.
    pub fn deriv_t(&self) -> Self {
        let coeffs = self.coeffs.iter().enumerate().skip(1).map(|(j, f)| f.scale_int(j as i64)).collect();
        TPoly { ring: self.ring.clone(), m: self.m, coeffs }
    }

    pub fn eval_t(&self, t: &BigRational) -> Result<TruncSeries> {
        let mut acc = TruncSeries::zero(&self.ring, self.m, padic_core::EXACT);
        for f in self.coeffs.iter().rev() {
            acc = acc.scale_rational(t).add(f)?;
        }
        Ok(acc)
    }

    /// Coefficientwise agreement at each coefficient's precision.
    pub fn agrees_with(&self, o: &Self) -> bool {
        let len = self.coeffs.len().max(o.coeffs.len());
        (0..len).all(|j| self.coeff(j).agrees_with(&o.coeff(j)))
    }
}

/// Coefficients of Π_{i<k}(t - i), lowest degree first.
fn falling_factorial(k: usize) -> Vec<BigInt> {
    let mut p = vec![BigInt::one()];
    for i in 0..k {
        let mut q = vec![BigInt::zero(); p.len() + 1];
        for (j, c) in p.iter().enumerate() {
            q[j + 1] += c;
            q[j] -= c * BigInt::from(i);
        }
        p = q;
    }
    p
}

/// ψ^t = Σ_k C(t,k) Δ^k(x) as a polynomial in t, each t-coefficient known to
/// 𝔪-order `n_target` once the omitted terms are accounted for.
pub fn iterate_tpoly(psi: &SeriesMap, n_target: i64) -> Result<Vec<TPoly>> {
    let ring = psi.ring().clone();
    let m = psi.m();
    let step = psi.congruence_order() - 1;
    let e = BigRational::from_integer(BigInt::from(ring.e()));
    let l1 = BigRational::from_integer(BigInt::from(ring.ell() - 1));
    let slope = BigRational::from_integer(BigInt::from(step)) - &e / &l1;
    if step < 1 || !slope.is_positive() {
        return Err(FlowError::OutsideRegion("t-polynomial coefficients do not converge".into()));
    }
    // Stirling coefficients are integral, so term k only loses v(k!) ≤ (k-1)/(l-1)
    let bound = |k: i64| BigRational::from_integer(BigInt::from(1 + k * step)) - &e * BigRational::from_integer(BigInt::from(k - 1)) / &l1;
    let mut kmax = 1i64;
    while bound(kmax) < BigRational::from_integer(BigInt::from(n_target)) {
        kmax += 1;
    }
    let deltas = delta_powers(psi, kmax as usize - 1)?;
    let mut out: Vec<Vec<TruncSeries>> = vec![vec![TruncSeries::zero(&ring, m, n_target); kmax as usize]; m];
    let mut fact = BigInt::one();
    for (k, dk) in deltas.iter().enumerate() {
        if k > 0 {
            fact *= BigInt::from(k);
        }
        for (j, c) in falling_factorial(k).into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let s = PadicScalar::from_rational(&ring, &BigRational::new(c, fact.clone()));
            for i in 0..m {
                out[i][j] = out[i][j].add(&dk[i].scale(&s))?;
            }
        }
    }
    Ok(out.into_iter().map(|cs| TPoly::from_coeffs(&ring, m, cs)).collect())
}

/// f(P_1(t), …, P_m(t)).
pub fn compose_into(f: &TruncSeries, p: &[TPoly]) -> Result<TPoly> {
    let ring = f.ring().clone();
    let m2 = p.first().map(|q| q.m).unwrap_or(f.m());
    let mut cache: HashMap<(usize, u32), TPoly> = HashMap::new();
    let mut acc = TPoly { ring: ring.clone(), m: m2, coeffs: vec![] };
    for (mono, c) in f.terms() {
        let mut term = TPoly::constant(TruncSeries::constant(&ring, m2, f.n(), c.clone()));
        for (i, &k) in mono.exps(f.m()).iter().enumerate() {
            if k == 0 {
                continue;
            }
            let pw = power(&mut cache, p, i, k)?;
            term = term.mul(&pw)?;
        }
        acc = acc.add(&term)?;
    }
    // the omitted part of f lies in 𝔪^n and so does its image
    let coeffs = if acc.coeffs.is_empty() {
        vec![TruncSeries::zero(&ring, m2, f.n())]
    } else {
        acc.coeffs.iter().map(|c| c.truncate(f.n())).collect()
    };
    Ok(TPoly { ring, m: m2, coeffs })
}

fn power(cache: &mut HashMap<(usize, u32), TPoly>, p: &[TPoly], i: usize, k: u32) -> Result<TPoly> {
    if let Some(v) = cache.get(&(i, k)) {
        return Ok(v.clone());
    }
    let v = if k == 1 { p[i].clone() } else { power(cache, p, i, k - 1)?.mul(&p[i])? };
    cache.insert((i, k), v.clone());
    Ok(v)
}
