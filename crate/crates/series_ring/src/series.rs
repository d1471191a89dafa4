//! Power series in m variables over E = Frac(O), known modulo 𝔪^n where
//! 𝔪 = (π, x_1, …, x_m). The coefficient of x^i is a scalar known modulo
//! 𝔩^(n-|i|); coefficients may have negative valuation, in which case degrees
//! beyond n can carry information.

use crate::error::{Result, SeriesError};
use crate::mono::{Mono, MAX_VARS};
use num_bigint::BigInt;
use num_rational::BigRational;
use padic_core::{linear_minus_valuation, PadicScalar, Ring, EXACT};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    ring: Ring,
    m: usize,
    n: i64,
    terms: BTreeMap<Mono, PadicScalar>,
}

/// Gauss norm ‖f‖_r at r = l^(-a), as a log: ‖f‖_r = l^(-log_norm).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussNorm {
    /// None for the zero series.
    pub log_norm: Option<BigRational>,
    pub radius_exponent: BigRational,
    /// The truncation error has log-norm at least this.
    pub tail_log_norm: BigRational,
}

impl TruncSeries {
    pub fn zero(ring: &Ring, m: usize, n: i64) -> Self {
        assert!(m <= MAX_VARS, "at most {MAX_VARS} variables");
        TruncSeries { ring: ring.clone(), m, n: n.min(EXACT), terms: BTreeMap::new() }
    }

    pub fn constant(ring: &Ring, m: usize, n: i64, c: PadicScalar) -> Self {
        Self::from_terms(ring, m, n, [(Mono::ONE, c)])
    }

    pub fn one(ring: &Ring, m: usize, n: i64) -> Self {
        Self::constant(ring, m, n, PadicScalar::one(ring))
    }

    /// The coordinate function x_i (0-based).
    pub fn var(ring: &Ring, m: usize, n: i64, i: usize) -> Self {
        assert!(i < m);
        Self::from_terms(ring, m, n, [(Mono::var(i), PadicScalar::one(ring))])
    }

    /// Sum of the given terms, truncated at 𝔪^n.
    pub fn from_terms(ring: &Ring, m: usize, n: i64, terms: impl IntoIterator<Item = (Mono, PadicScalar)>) -> Self {
        let mut acc: BTreeMap<Mono, PadicScalar> = BTreeMap::new();
        for (k, c) in terms {
            accumulate(&mut acc, k, c);
        }
        finalize(ring, m, n, acc)
    }

    pub fn from_int_terms(ring: &Ring, m: usize, n: i64, terms: &[(&[u32], i64)]) -> Result<Self> {
        let mut v = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            check_len(e, m)?;
            v.push((Mono::from_exps(e)?, PadicScalar::from_int(ring, *c)));
        }
        Ok(Self::from_terms(ring, m, n, v))
    }

    pub fn from_rational_terms(ring: &Ring, m: usize, n: i64, terms: &[(&[u32], BigRational)]) -> Result<Self> {
        let mut v = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            check_len(e, m)?;
            v.push((Mono::from_exps(e)?, PadicScalar::from_rational(ring, c)));
        }
        Ok(Self::from_terms(ring, m, n, v))
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Truncation order: the series is known modulo 𝔪^n.
    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &PadicScalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Zero modulo 𝔪^n.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: Mono) -> PadicScalar {
        self.terms.get(&k).cloned().unwrap_or_else(|| PadicScalar::zero_to(&self.ring, self.n - k.degree()))
    }

    pub fn constant_term(&self) -> PadicScalar {
        self.coeff(Mono::ONE)
    }

    /// 𝔪-adic order, capped at n.
    pub fn order(&self) -> i64 {
        self.terms.iter().map(|(k, c)| c.w() + k.degree()).min().unwrap_or(self.n).min(self.n)
    }

    /// Largest total degree among stored terms.
    pub fn degree(&self) -> i64 {
        self.terms.keys().map(|k| k.degree()).max().unwrap_or(0)
    }

    pub fn same_space(&self, o: &Self) -> Result<()> {
        if self.m != o.m || self.ring != o.ring {
            return Err(SeriesError::VarMismatch);
        }
        Ok(())
    }

    /// Lower the truncation order to `n` (no-op if n ≥ current order).
    pub fn truncate(&self, n: i64) -> Self {
        if n >= self.n {
            return self.clone();
        }
        finalize(&self.ring, self.m, n, self.terms.clone())
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(k, c)| (*k, c.neg())).collect();
        TruncSeries { ring: self.ring.clone(), m: self.m, n: self.n, terms }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same_space(o)?;
        let mut acc = self.terms.clone();
        for (k, c) in &o.terms {
            accumulate(&mut acc, *k, c.clone());
        }
        Ok(finalize(&self.ring, self.m, self.n.min(o.n), acc))
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.same_space(o)?;
        let n_out = (self.n + o.order()).min(o.n + self.order());
        let mut acc: BTreeMap<Mono, PadicScalar> = BTreeMap::new();
        for (a, ca) in &self.terms {
            let wa = ca.w() + a.degree();
            for (b, cb) in &o.terms {
                if wa + cb.w() + b.degree() >= n_out {
                    continue;
                }
                accumulate(&mut acc, a.mul(*b)?, ca.mul(cb));
            }
        }
        Ok(finalize(&self.ring, self.m, n_out, acc))
    }

    pub fn scale(&self, c: &PadicScalar) -> Self {
        let n_out = (self.n + c.w()).min(c.abs_prec() + self.order());
        if c.is_zero() {
            return Self::zero(&self.ring, self.m, n_out);
        }
        let acc = self.terms.iter().map(|(k, t)| (*k, t.mul(c))).collect();
        finalize(&self.ring, self.m, n_out, acc)
    }

    pub fn scale_rational(&self, q: &BigRational) -> Self {
        self.scale(&PadicScalar::from_rational(&self.ring, q))
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale_rational(&BigRational::from_integer(BigInt::from(k)))
    }

    pub fn pow(&self, k: u64) -> Result<Self> {
        let mut acc = Self::one(&self.ring, self.m, self.n);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Multiplicative inverse; the constant term must be a unit and the rest
    /// must lie in 𝔪.
    pub fn inv(&self) -> Result<Self> {
        let c0 = self.constant_term();
        if !c0.is_unit() {
            return Err(SeriesError::NonUnit);
        }
        let c0i = c0.inv()?;
        // f = c0 (1 + g)
        let g = self.scale(&c0i).sub(&Self::one(&self.ring, self.m, self.n))?;
        if g.order() < 1 {
            return Err(SeriesError::NonUnit);
        }
        let ng = g.neg();
        let mut sum = Self::one(&self.ring, self.m, self.n);
        let mut p = ng.clone();
        while !p.is_zero() && p.order() < sum.n {
            sum = sum.add(&p)?;
            p = p.mul(&ng)?;
        }
        sum = sum.truncate(p.order());
        Ok(sum.scale(&c0i))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        self.mul(&o.inv()?)
    }

    /// ∂/∂x_i; the truncation order drops by one.
    pub fn derivative(&self, i: usize) -> Self {
        assert!(i < self.m);
        let mut acc = BTreeMap::new();
        for (k, c) in &self.terms {
            if let Some(k2) = k.div_var(i) {
                accumulate(&mut acc, k2, c.mul(&PadicScalar::from_int(&self.ring, k.exp(i) as i64)));
            }
        }
        finalize(&self.ring, self.m, self.n - 1, acc)
    }

    /// ∫_0^{x_i} f dx_i. Division by exponents costs up to e·v_l(k) per term, so
    /// the order becomes min_{k>n} (k - e·v_l(k)) or the per-term bound.
    pub fn integrate(&self, i: usize) -> Result<Self> {
        assert!(i < self.m);
        let r = &self.ring;
        let n_out = linear_minus_valuation(r.ell(), r.e() as i64, 1, (self.n + 1).max(1) as u64);
        let mut acc = BTreeMap::new();
        for (k, c) in &self.terms {
            let s = k.exp(i) as i64 + 1;
            let k2 = k.mul(Mono::var(i))?;
            accumulate(&mut acc, k2, c.div(&PadicScalar::from_int(r, s))?);
        }
        Ok(finalize(r, self.m, n_out.min(self.n + 1), acc))
    }

    /// f(ψ_1, …, ψ_m) for ψ_j in 𝔪 (each ψ_j may have its own variable count,
    /// shared by all components).
    pub fn substitute(&self, psi: &[TruncSeries]) -> Result<Self> {
        if psi.len() != self.m {
            return Err(SeriesError::Shape(format!("substitution needs {} components, got {}", self.m, psi.len())));
        }
        let (ring, m2) = match psi.first() {
            Some(p) => (p.ring.clone(), p.m),
            None => (self.ring.clone(), 0),
        };
        for (j, p) in psi.iter().enumerate() {
            if p.m != m2 || p.ring != self.ring {
                return Err(SeriesError::VarMismatch);
            }
            if p.order() < 1 {
                return Err(SeriesError::NotContracting(j));
            }
        }
        let n_psi = psi.iter().map(|p| p.n).min().unwrap_or(EXACT);
        let mut powers: Vec<Vec<TruncSeries>> = psi.iter().map(|_| vec![Self::one(&ring, m2, n_psi)]).collect();
        let mut out = Self::zero(&ring, m2, self.n.min(EXACT));
        for (k, c) in &self.terms {
            let mut prod = Self::one(&ring, m2, n_psi);
            for (j, pj) in psi.iter().enumerate() {
                let e = k.exp(j) as usize;
                while powers[j].len() <= e {
                    let next = powers[j].last().unwrap().mul(pj)?;
                    powers[j].push(next);
                }
                if e > 0 {
                    prod = prod.mul(&powers[j][e])?;
                }
            }
            out = out.add(&prod.scale(c))?;
        }
        Ok(out.truncate(self.n))
    }

    /// Value at a point of the open polydisk (all coordinates in 𝔩).
    pub fn eval(&self, point: &[PadicScalar]) -> Result<PadicScalar> {
        if point.len() != self.m {
            return Err(SeriesError::Shape(format!("point needs {} coordinates", self.m)));
        }
        for (j, p) in point.iter().enumerate() {
            if p.w() < 1 {
                return Err(SeriesError::NotContracting(j));
            }
        }
        let mut acc = PadicScalar::zero_to(&self.ring, self.n);
        for (k, c) in &self.terms {
            let mut t = c.clone();
            for (j, p) in point.iter().enumerate() {
                let e = k.exp(j);
                if e > 0 {
                    t = t.mul(&p.pow(e as u64));
                }
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Gauss norm at radius l^(-a), 0 < a ≤ 1/e.
    pub fn gauss_norm(&self, a: &BigRational) -> Result<GaussNorm> {
        let e = BigRational::from_integer(BigInt::from(self.ring.e()));
        let zero = BigRational::from_integer(BigInt::from(0));
        if *a <= zero || a * &e > BigRational::from_integer(BigInt::from(1)) {
            return Err(SeriesError::BadRadius);
        }
        let log_norm = self
            .terms
            .iter()
            .map(|(k, c)| c.valuation() + a * BigRational::from_integer(BigInt::from(k.degree())))
            .min();
        let tail_log_norm = a * BigRational::from_integer(BigInt::from(self.n));
        Ok(GaussNorm { log_norm, radius_exponent: a.clone(), tail_log_norm })
    }

    /// Equality of the digits both operands certify.
    pub fn agrees_with(&self, o: &Self) -> bool {
        self.sub(o).map(|d| d.is_zero()).unwrap_or(false)
    }

    /// Set x_i = 0 for every i in `vars`.
    pub fn set_zero(&self, vars: &[usize]) -> Self {
        let acc = self.terms.iter().filter(|(k, _)| vars.iter().all(|&i| k.exp(i) == 0)).map(|(k, c)| (*k, c.clone())).collect();
        TruncSeries { ring: self.ring.clone(), m: self.m, n: self.n, terms: acc }
    }
}

fn check_len(e: &[u32], m: usize) -> Result<()> {
    if e.len() != m {
        return Err(SeriesError::Shape(format!("exponent vector of length {} for {m} variables", e.len())));
    }
    Ok(())
}

fn accumulate(acc: &mut BTreeMap<Mono, PadicScalar>, k: Mono, c: PadicScalar) {
    match acc.get_mut(&k) {
        Some(x) => *x = x.add(&c),
        None => {
            acc.insert(k, c);
        }
    }
}

/// Lower n to what the coefficients certify, then reduce every coefficient
/// modulo 𝔩^(n-|k|) and drop the zeros.
pub(crate) fn finalize(ring: &Ring, m: usize, n: i64, acc: BTreeMap<Mono, PadicScalar>) -> TruncSeries {
    let mut n = n.min(EXACT);
    for (k, c) in &acc {
        n = n.min(c.abs_prec() + k.degree());
    }
    let terms = acc
        .into_iter()
        .filter_map(|(k, c)| {
            let c = c.truncate(n - k.degree());
            (!c.is_zero()).then_some((k, c))
        })
        .collect();
    TruncSeries { ring: ring.clone(), m, n, terms }
}

/// Compact human-readable coefficient: the signed integer for integral e = 1
/// values, otherwise the wire form.
pub fn format_coeff(c: &PadicScalar) -> String {
    let r = c.ring();
    if r.e() == 1 && c.w() >= 0 {
        if let Some(v) = c.to_bigint() {
            let m = BigInt::from(r.ell()).pow(c.abs_prec() as u32);
            let half = &m / 2;
            return if v > half { (v - m).to_string() } else { v.to_string() };
        }
    }
    format!("({})", c.to_wire())
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            f.write_str(&format_coeff(c))?;
            for i in 0..self.m {
                match k.exp(i) {
                    0 => {}
                    1 => write!(f, "*x{}", i + 1)?,
                    e => write!(f, "*x{}^{}", i + 1, e)?,
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(m^{})", self.n)
    }
}
