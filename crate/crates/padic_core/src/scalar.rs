//! Elements of E = Frac(O) at finite precision, stored as 𝔩^w · unit with an
//! absolute error exponent.

use crate::error::{PadicError, Result};
use crate::ring::{Elt, Ring};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Exact rational carrier; reduced form is maintained by `num_rational`.
pub type ExactRational = BigRational;

/// Error exponent used for values that are exact (such as rational zero).
pub const EXACT: i64 = i64::MAX / 8;

/// x = π^w · unit, known modulo 𝔩^abs. All exponents are in 𝔩-units, so the
/// l-adic valuation of x is w/e. A certified zero has `unit` zero and w = abs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicScalar {
    ring: Ring,
    w: i64,
    unit: Elt,
    abs: i64,
}

impl PadicScalar {
    /// Zero known modulo 𝔩^abs.
    pub fn zero_to(ring: &Ring, abs: i64) -> Self {
        let abs = abs.min(EXACT);
        PadicScalar { ring: ring.clone(), w: abs, unit: Elt::ZERO, abs }
    }

    /// Exact zero (to the full relative precision of the ring at valuation 0).
    pub fn zero(ring: &Ring) -> Self {
        Self::zero_to(ring, ring.prec() as i64)
    }

    pub fn one(ring: &Ring) -> Self {
        Self::from_unit(ring, 0, ring.one(), ring.prec() as i64)
    }

    /// π^w · unit known to absolute precision `abs` (capped at w + P).
    pub fn from_unit(ring: &Ring, w: i64, unit: Elt, abs: i64) -> Self {
        let abs = abs.min(w + ring.prec() as i64);
        if abs <= w {
            return Self::zero_to(ring, abs);
        }
        debug_assert!(ring.is_unit(unit));
        let unit = ring.reduce(unit, abs - w);
        PadicScalar { ring: ring.clone(), w, unit, abs }
    }

    /// Interpret a residue of O/𝔩^P (known to 𝔩^P) as a scalar.
    pub fn from_elt(ring: &Ring, x: Elt) -> Self {
        Self::from_elt_to(ring, x, ring.prec() as i64)
    }

    /// A residue of O/𝔩^P known only modulo 𝔩^abs.
    pub fn from_elt_to(ring: &Ring, x: Elt, abs: i64) -> Self {
        let x = ring.reduce(x, abs);
        let v = ring.valuation(x) as i64;
        if v >= abs {
            return Self::zero_to(ring, abs);
        }
        let unit = ring.div_pi_pow(x, v as u32);
        Self::from_unit(ring, v, unit, abs)
    }

    pub fn from_int(ring: &Ring, x: i64) -> Self {
        Self::from_rational(ring, &BigRational::from_integer(BigInt::from(x)))
    }

    /// Exact rational, embedded with full relative precision P.
    pub fn from_rational(ring: &Ring, q: &BigRational) -> Self {
        let p = ring.prec() as i64;
        if q.is_zero() {
            return Self::zero_to(ring, EXACT);
        }
        let (wn, un) = ring.split_bigint(q.numer()).unwrap();
        let (wd, ud) = ring.split_bigint(q.denom()).unwrap();
        let unit = ring.mul(un, ring.inv(ud).expect("unit"));
        let w = wn - wd;
        PadicScalar { ring: ring.clone(), w, unit: ring.reduce(unit, p), abs: w + p }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.unit.is_zero()
    }

    /// Valuation in 𝔩-units (equal to the error exponent for a certified zero).
    pub fn w(&self) -> i64 {
        self.w
    }

    /// l-adic valuation as a rational (denominator divides e).
    pub fn valuation(&self) -> BigRational {
        BigRational::new(BigInt::from(self.w), BigInt::from(self.ring.e()))
    }

    pub fn unit(&self) -> Elt {
        self.unit
    }

    /// Absolute error exponent in 𝔩-units.
    pub fn abs_prec(&self) -> i64 {
        self.abs
    }

    pub fn error_exponent(&self) -> BigRational {
        BigRational::new(BigInt::from(self.abs), BigInt::from(self.ring.e()))
    }

    pub fn rel_prec(&self) -> i64 {
        self.abs - self.w
    }

    pub fn is_unit(&self) -> bool {
        !self.is_zero() && self.w == 0
    }

    /// Drop digits at and beyond 𝔩^abs.
    pub fn truncate(&self, abs: i64) -> Self {
        if abs >= self.abs {
            return self.clone();
        }
        if self.is_zero() || abs <= self.w {
            return Self::zero_to(&self.ring, abs);
        }
        Self::from_unit(&self.ring, self.w, self.unit, abs)
    }

    /// Residue in O/𝔩^P of an integral scalar (digits beyond abs are zero).
    pub fn to_elt(&self) -> Result<Elt> {
        if self.is_zero() {
            return Ok(Elt::ZERO);
        }
        if self.w < 0 {
            return Err(PadicError::NotUnit);
        }
        let r = &self.ring;
        if self.w >= r.prec() as i64 {
            return Ok(Elt::ZERO);
        }
        Ok(r.reduce(r.mul_pi_pow(self.unit, self.w as u32), self.abs))
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        out.unit = self.ring.reduce(self.ring.neg(self.unit), self.abs - self.w);
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let r = &self.ring;
        let abs = self.abs.min(other.abs);
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Self::zero_to(r, abs),
            (true, false) => return other.truncate(abs),
            (false, true) => return self.truncate(abs),
            _ => {}
        }
        let w0 = self.w.min(other.w);
        if abs <= w0 {
            return Self::zero_to(r, abs);
        }
        let shift = |x: &Self| {
            let d = x.w - w0;
            if d >= abs - w0 { Elt::ZERO } else { r.mul_pi_pow(x.unit, d as u32) }
        };
        let a = shift(self);
        let b = shift(other);
        let s = r.reduce(r.add(a, b), abs - w0);
        let v = r.valuation(s) as i64;
        if v >= abs - w0 {
            return Self::zero_to(r, abs);
        }
        let unit = r.div_pi_pow(s, v as u32);
        Self::from_unit(r, w0 + v, unit, abs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let r = &self.ring;
        let abs = (self.abs + other.w).min(other.abs + self.w);
        if self.is_zero() || other.is_zero() {
            return Self::zero_to(r, abs);
        }
        Self::from_unit(r, self.w + other.w, r.mul(self.unit, other.unit), abs)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(PadicError::NotUnit);
        }
        let r = &self.ring;
        let rel = self.abs - self.w;
        Ok(Self::from_unit(r, -self.w, r.inv(self.unit)?, -self.w + rel))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, n: u64) -> Self {
        let mut acc = Self::one(&self.ring);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        acc
    }

    pub fn mul_rational(&self, q: &BigRational) -> Self {
        self.mul(&Self::from_rational(&self.ring, q))
    }

    /// Equality of the digits both operands certify.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }

    /// Residue in F_l of a unit or integral scalar.
    pub fn residue(&self) -> u64 {
        if self.is_zero() || self.w > 0 {
            0
        } else {
            self.ring.residue(self.unit)
        }
    }

    /// Wire format "w:<rational> u:<unit> mod l^<abs>". For e > 1 the modulus
    /// exponent is in 𝔩-units and the unit is the coordinate vector.
    pub fn to_wire(&self) -> String {
        let r = &self.ring;
        let wq = self.valuation();
        let abs = if r.e() == 1 { self.abs.to_string() } else { format!("{}/{}", self.abs, r.e()) };
        format!("w:{} u:{} mod l^{}", fmt_rational(&wq), r.format(self.unit), abs)
    }

    pub fn from_wire(ring: &Ring, s: &str) -> Result<Self> {
        let bad = || PadicError::Parse(s.to_string());
        let mut w = None;
        let mut u = None;
        let mut abs = None;
        let mut it = s.split_whitespace();
        while let Some(tok) = it.next() {
            if let Some(x) = tok.strip_prefix("w:") {
                w = Some(parse_rational(x).ok_or_else(bad)?);
            } else if let Some(x) = tok.strip_prefix("u:") {
                u = Some(ring.parse(x)?);
            } else if tok == "mod" {
                let m = it.next().ok_or_else(bad)?;
                let m = m.strip_prefix("l^").ok_or_else(bad)?;
                abs = Some(parse_rational(m).ok_or_else(bad)?);
            } else {
                return Err(bad());
            }
        }
        let e = BigRational::from_integer(BigInt::from(ring.e()));
        let to_units = |q: BigRational| -> Result<i64> {
            let t = q * &e;
            if !t.is_integer() {
                return Err(bad());
            }
            i64::try_from(t.to_integer()).map_err(|_| bad())
        };
        let w = to_units(w.ok_or_else(bad)?)?;
        let abs = to_units(abs.ok_or_else(bad)?)?;
        let u = u.ok_or_else(bad)?;
        if u.is_zero() {
            return Ok(Self::zero_to(ring, abs));
        }
        if !ring.is_unit(u) {
            return Err(bad());
        }
        Ok(Self::from_unit(ring, w, u, abs))
    }

    /// For e = 1 and integral values: the canonical integer representative.
    pub fn to_bigint(&self) -> Option<BigInt> {
        if self.ring.e() != 1 || self.w < 0 {
            return None;
        }
        if self.is_zero() {
            return Some(BigInt::zero());
        }
        let r = &self.ring;
        let x = BigInt::from(r.to_u64(self.unit)) * BigInt::from(r.ell()).pow(self.w as u32);
        let m = BigInt::from(r.ell()).pow(self.abs as u32);
        Some(((x % &m) + &m) % m)
    }
}

pub fn fmt_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let a: BigInt = a.trim().parse().ok()?;
        let b: BigInt = b.trim().parse().ok()?;
        if b.is_zero() {
            return None;
        }
        Some(BigRational::new(a, b))
    } else {
        let a: BigInt = s.parse().ok()?;
        Some(BigRational::from_integer(a))
    }
}

/// l-adic valuation of a nonzero rational.
pub fn rational_valuation(q: &BigRational, ell: u64) -> i64 {
    fn v(x: &BigInt, ell: u64) -> i64 {
        let l = BigInt::from(ell);
        let mut x = x.abs();
        let mut k = 0;
        while (&x % &l).is_zero() {
            x /= &l;
            k += 1;
        }
        k
    }
    v(q.numer(), ell) - v(q.denom(), ell)
}

impl fmt::Display for PadicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_wire())
    }
}
