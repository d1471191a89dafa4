//! Residue rings O/𝔩^P for a totally ramified extension O = Z_l[π], π a root
//! of a monic Eisenstein polynomial of degree e.
//!
//! An element is stored as coordinates a_0..a_{e-1} of Σ a_j π^j. Because the
//! summands have pairwise distinct valuations mod e, the valuation of the sum is
//! min_j (e·v_l(a_j) + j), so 𝔩^P is cut out coordinatewise and every residue
//! class has a canonical representative with a_j < l^{ceil((P-j)/e)}.

use crate::error::{PadicError, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

/// Largest supported ramification index.
pub const MAX_E: usize = 4;

/// Coordinates of an element of O/𝔩^P. Only the first `e` slots are used.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elt(pub [u64; MAX_E]);

impl Elt {
    pub const ZERO: Elt = Elt([0; MAX_E]);

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

/// Wire description of a coefficient ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingSpec {
    pub ell: u64,
    pub e: u32,
    #[serde(rename = "P")]
    pub prec: u32,
    /// Lower coefficients c_0..c_{e-1} of the monic Eisenstein polynomial.
    /// Empty means x - ell (so π = ell) when e = 1.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub eisenstein: Vec<i64>,
}

impl RingSpec {
    pub fn new(ell: u64, prec: u32) -> Self {
        RingSpec { ell, e: 1, prec, eisenstein: Vec::new() }
    }

    pub fn ramified(ell: u64, eisenstein: Vec<i64>, prec: u32) -> Self {
        RingSpec { ell, e: eisenstein.len() as u32, prec, eisenstein }
    }
}

/// Arithmetic context for O/𝔩^P. Cheap to clone.
#[derive(Clone)]
pub struct Ring(Arc<RingInner>);

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(PartialEq, Eq)]
pub struct RingInner {
    ell: u64,
    e: u32,
    prec: u32,
    q: u64,
    qj: [u64; MAX_E],
    red: [u64; MAX_E],
    eis: [i64; MAX_E],
    eta: Elt,
    eps: Elt,
    pw: [u64; 64],
    kmax: u32,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// l-adic valuation of a nonzero integer.
pub fn val_u64(mut x: u64, ell: u64) -> u32 {
    debug_assert!(x != 0);
    let mut v = 0;
    while x % ell == 0 {
        x /= ell;
        v += 1;
    }
    v
}

fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let qt = r0 / r1;
        (r0, r1) = (r1, r0 - qt * r1);
        (t0, t1) = (t1, t0 - qt * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

#[inline]
fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

impl Ring {
    pub fn from_spec(spec: &RingSpec) -> Result<Ring> {
        let ell = spec.ell;
        if ell < 3 || !is_prime(ell) {
            return Err(PadicError::InvalidRing(format!("ell = {ell} must be an odd prime")));
        }
        let e = spec.e as usize;
        if e == 0 || e > MAX_E {
            return Err(PadicError::InvalidRing(format!("ramification index {e} outside 1..={MAX_E}")));
        }
        if spec.prec == 0 {
            return Err(PadicError::InvalidRing("precision must be positive".into()));
        }
        let coeffs: Vec<i64> = if spec.eisenstein.is_empty() {
            if e != 1 {
                return Err(PadicError::InvalidRing("ramified ring needs an Eisenstein polynomial".into()));
            }
            vec![-(ell as i64)]
        } else {
            spec.eisenstein.clone()
        };
        if coeffs.len() != e {
            return Err(PadicError::InvalidRing("Eisenstein polynomial degree differs from e".into()));
        }
        let l = ell as i64;
        if coeffs.iter().any(|c| c % l != 0) || coeffs[0] % (l * l) == 0 {
            return Err(PadicError::InvalidRing("polynomial is not Eisenstein".into()));
        }
        let prec = spec.prec;
        let k = prec.div_ceil(e as u32);
        let mut pw = [0u64; 64];
        pw[0] = 1;
        let mut kmax = 0;
        for i in 1..64 {
            match pw[i - 1].checked_mul(ell) {
                Some(v) if v < (1u64 << 62) => {
                    pw[i] = v;
                    kmax = i as u32;
                }
                _ => break,
            }
        }
        if k > kmax {
            return Err(PadicError::InvalidRing(format!(
                "precision {prec} too large: l^{k} does not fit the 62-bit residue word"
            )));
        }
        let q = pw[k as usize];
        let mut qj = [1u64; MAX_E];
        for (j, slot) in qj.iter_mut().enumerate().take(e) {
            let r = (prec as i64 - j as i64).max(0) as u32;
            *slot = pw[r.div_ceil(e as u32) as usize];
        }
        let mut eis = [0i64; MAX_E];
        let mut red = [0u64; MAX_E];
        for j in 0..e {
            eis[j] = coeffs[j];
            red[j] = (-(coeffs[j] as i128)).rem_euclid(q as i128) as u64;
        }
        let mut ring = RingInner {
            ell,
            e: e as u32,
            prec,
            q,
            qj,
            red,
            eis,
            eta: Elt::ZERO,
            eps: Elt::ZERO,
            pw,
            kmax,
        };
        // l = π·η with η = -(π^{e-1} + c_{e-1}π^{e-2} + ... + c_1)/u0, u0 = c_0/l
        let u0 = (coeffs[0] / l).rem_euclid(q as i64) as u64;
        let u0inv = mod_inverse(u0, q).expect("u0 is a unit");
        let mut eta = Elt::ZERO;
        for j in 0..e {
            let c = if j + 1 < e { coeffs[j + 1] } else { 1 };
            let v = (-(c as i128)).rem_euclid(q as i128) as u64;
            eta.0[j] = mulmod(v, u0inv, q);
        }
        ring.eta = ring.canon_q(eta);
        // π^e = l·(-Σ u_j π^j) so l = π^e·ε with ε = (-Σ u_j π^j)^{-1}
        let mut w = Elt::ZERO;
        for j in 0..e {
            w.0[j] = (-((coeffs[j] / l) as i128)).rem_euclid(q as i128) as u64;
        }
        let w = ring.canon_q(w);
        ring.eps = ring.inv(w)?;
        Ok(Ring(Arc::new(ring)))
    }
}

impl fmt::Debug for RingInner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring(l={}, e={}, P={})", self.ell, self.e, self.prec)
    }
}

impl Deref for Ring {
    type Target = RingInner;
    fn deref(&self) -> &RingInner {
        &self.0
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Ring) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Eq for Ring {}

impl Ring {
    /// Same extension, different precision.
    pub fn with_prec(&self, prec: u32) -> Result<Ring> {
        let mut s = self.spec();
        s.prec = prec;
        Ring::from_spec(&s)
    }
}

impl RingInner {
    pub fn spec(&self) -> RingSpec {
        let eisenstein = if self.e == 1 && self.eis[0] == -(self.ell as i64) {
            Vec::new()
        } else {
            self.eis[..self.e as usize].to_vec()
        };
        RingSpec { ell: self.ell, e: self.e, prec: self.prec, eisenstein }
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }
    pub fn e(&self) -> u32 {
        self.e
    }
    pub fn prec(&self) -> u32 {
        self.prec
    }
    /// Modulus l^ceil(P/e) of the coordinate words.
    pub fn word_modulus(&self) -> u64 {
        self.q
    }
    /// Largest k with l^k representable in a residue word.
    pub fn max_word_exponent(&self) -> u32 {
        self.kmax
    }
    pub fn ell_pow(&self, k: u32) -> u64 {
        self.pw[k as usize]
    }
    /// The unit ε with l = π^e·ε.
    pub fn eps(&self) -> Elt {
        self.eps
    }

    fn canon_q(&self, mut a: Elt) -> Elt {
        for j in 0..self.e as usize {
            a.0[j] %= self.qj[j];
        }
        a
    }

    pub fn zero(&self) -> Elt {
        Elt::ZERO
    }

    pub fn one(&self) -> Elt {
        self.from_u64(1)
    }

    pub fn from_u64(&self, x: u64) -> Elt {
        let mut a = Elt::ZERO;
        a.0[0] = x % self.qj[0];
        a
    }

    pub fn from_i64(&self, x: i64) -> Elt {
        let mut a = Elt::ZERO;
        a.0[0] = (x as i128).rem_euclid(self.qj[0] as i128) as u64;
        a
    }

    pub fn from_bigint(&self, x: &BigInt) -> Elt {
        let m = BigInt::from(self.qj[0]);
        let r = x.mod_floor(&m);
        let mut a = Elt::ZERO;
        a.0[0] = r.to_u64().expect("reduced");
        a
    }

    /// Element with the given π-adic coordinates (reduced).
    pub fn from_coords(&self, coords: &[i64]) -> Elt {
        let mut a = Elt::ZERO;
        for (j, &c) in coords.iter().enumerate().take(self.e as usize) {
            a.0[j] = (c as i128).rem_euclid(self.qj[j] as i128) as u64;
        }
        a
    }

    pub fn coords(&self, a: Elt) -> Vec<u64> {
        a.0[..self.e as usize].to_vec()
    }

    /// The uniformizer π.
    pub fn pi(&self) -> Elt {
        if self.e == 1 {
            self.from_i64(-self.eis[0])
        } else {
            let mut a = Elt::ZERO;
            a.0[1] = 1 % self.qj[1];
            a
        }
    }

    #[inline]
    pub fn add(&self, a: Elt, b: Elt) -> Elt {
        let mut c = Elt::ZERO;
        for j in 0..self.e as usize {
            let s = a.0[j] + b.0[j];
            c.0[j] = if s >= self.qj[j] { s - self.qj[j] } else { s };
        }
        c
    }

    #[inline]
    pub fn sub(&self, a: Elt, b: Elt) -> Elt {
        let mut c = Elt::ZERO;
        for j in 0..self.e as usize {
            c.0[j] = if a.0[j] >= b.0[j] { a.0[j] - b.0[j] } else { a.0[j] + self.qj[j] - b.0[j] };
        }
        c
    }

    #[inline]
    pub fn neg(&self, a: Elt) -> Elt {
        self.sub(Elt::ZERO, a)
    }

    #[inline]
    pub fn mul(&self, a: Elt, b: Elt) -> Elt {
        if self.e == 1 {
            let mut c = Elt::ZERO;
            c.0[0] = mulmod(a.0[0], b.0[0], self.q);
            return c;
        }
        let e = self.e as usize;
        let q = self.q as u128;
        let mut acc = [0u128; 2 * MAX_E];
        for i in 0..e {
            if a.0[i] == 0 {
                continue;
            }
            for j in 0..e {
                acc[i + j] += a.0[i] as u128 * b.0[j] as u128;
            }
        }
        let mut c = [0u64; 2 * MAX_E];
        for k in 0..2 * e - 1 {
            c[k] = (acc[k] % q) as u64;
        }
        for k in (e..2 * e - 1).rev() {
            let t = c[k];
            if t == 0 {
                continue;
            }
            c[k] = 0;
            for j in 0..e {
                c[k - e + j] = ((c[k - e + j] as u128 + t as u128 * self.red[j] as u128) % q) as u64;
            }
        }
        let mut out = Elt::ZERO;
        out.0[..e].copy_from_slice(&c[..e]);
        self.canon_q(out)
    }

    pub fn mul_u64(&self, a: Elt, k: u64) -> Elt {
        self.mul(a, self.from_u64(k))
    }

    pub fn pow(&self, a: Elt, mut n: u64) -> Elt {
        let mut base = a;
        let mut acc = self.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    /// Valuation in 𝔩-units; returns P for zero.
    pub fn valuation(&self, a: Elt) -> u32 {
        let mut v = self.prec;
        for j in 0..self.e as usize {
            if a.0[j] != 0 {
                v = v.min(self.e * val_u64(a.0[j], self.ell) + j as u32);
            }
        }
        v
    }

    pub fn is_unit(&self, a: Elt) -> bool {
        a.0[0] % self.ell != 0
    }

    /// Image in the residue field F_l.
    pub fn residue(&self, a: Elt) -> u64 {
        a.0[0] % self.ell
    }

    pub fn mul_pi(&self, a: Elt) -> Elt {
        if self.e == 1 {
            return self.mul(a, self.pi());
        }
        let e = self.e as usize;
        let top = a.0[e - 1];
        let mut c = Elt::ZERO;
        for j in (1..e).rev() {
            c.0[j] = a.0[j - 1];
        }
        for j in 0..e {
            c.0[j] = ((c.0[j] as u128 + top as u128 * self.red[j] as u128) % self.q as u128) as u64;
        }
        self.canon_q(c)
    }

    pub fn mul_pi_pow(&self, mut a: Elt, k: u32) -> Elt {
        if self.e == 1 {
            return self.mul(a, self.pow(self.pi(), k as u64));
        }
        for _ in 0..k {
            a = self.mul_pi(a);
        }
        a
    }

    /// Exact division by π of an element of positive valuation. The result is
    /// only meaningful modulo 𝔩^{P-1}.
    pub fn div_pi(&self, a: Elt) -> Elt {
        debug_assert!(a.0[0] % self.ell == 0);
        let e = self.e as usize;
        let mut head = Elt::ZERO;
        head.0[0] = a.0[0] / self.ell;
        let mut c = self.mul(head, self.eta);
        let mut rest = Elt::ZERO;
        for j in 1..e {
            rest.0[j - 1] = a.0[j];
        }
        c = self.add(c, self.canon_q(rest));
        c
    }

    pub fn div_pi_pow(&self, mut a: Elt, k: u32) -> Elt {
        for _ in 0..k {
            a = self.div_pi(a);
        }
        a
    }

    /// Reduce modulo 𝔩^r (r ≤ P).
    pub fn reduce(&self, mut a: Elt, r: i64) -> Elt {
        for j in 0..self.e as usize {
            let rr = r - j as i64;
            if rr <= 0 {
                a.0[j] = 0;
            } else {
                let m = self.pw[(rr as u32).div_ceil(self.e).min(self.kmax) as usize];
                if m < self.qj[j] {
                    a.0[j] %= m;
                }
            }
        }
        a
    }

    pub fn inv(&self, a: Elt) -> Result<Elt> {
        if !self.is_unit(a) {
            return Err(PadicError::NotUnit);
        }
        if self.e == 1 {
            let mut c = Elt::ZERO;
            c.0[0] = mod_inverse(a.0[0], self.q).ok_or(PadicError::NotUnit)?;
            return Ok(c);
        }
        let r0 = mod_inverse(a.0[0] % self.ell, self.ell).ok_or(PadicError::NotUnit)?;
        let mut y = self.from_u64(r0);
        let two = self.from_u64(2);
        let mut known = 1u32;
        while known < self.prec {
            y = self.mul(y, self.sub(two, self.mul(a, y)));
            known *= 2;
        }
        y = self.mul(y, self.sub(two, self.mul(a, y)));
        debug_assert_eq!(self.mul(a, y), self.one());
        Ok(y)
    }

    /// Teichmüller representative of a nonzero residue.
    pub fn teichmuller(&self, u: u64) -> Elt {
        let mut x = self.from_u64(u % self.ell);
        for _ in 0..=self.prec {
            let y = self.pow(x, self.ell);
            if y == x {
                break;
            }
            x = y;
        }
        x
    }

    /// Canonical integer representative for e = 1.
    pub fn to_u64(&self, a: Elt) -> u64 {
        a.0[0]
    }

    /// Signed representative in (-q/2, q/2] for e = 1.
    pub fn to_signed(&self, a: Elt) -> i64 {
        let q = self.qj[0];
        if a.0[0] > q / 2 {
            a.0[0] as i64 - q as i64
        } else {
            a.0[0] as i64
        }
    }

    pub fn format(&self, a: Elt) -> String {
        if self.e == 1 {
            a.0[0].to_string()
        } else {
            let parts: Vec<String> = a.0[..self.e as usize].iter().map(|c| c.to_string()).collect();
            format!("[{}]", parts.join(","))
        }
    }

    pub fn parse(&self, s: &str) -> Result<Elt> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
            let mut coords = Vec::new();
            for p in inner.split(',') {
                let v: BigInt = p.trim().parse().map_err(|_| PadicError::Parse(s.to_string()))?;
                coords.push(v);
            }
            let mut a = Elt::ZERO;
            for (j, c) in coords.iter().enumerate().take(self.e as usize) {
                let m = BigInt::from(self.qj[j]);
                a.0[j] = c.mod_floor(&m).to_u64().unwrap();
            }
            Ok(a)
        } else {
            let v: BigInt = s.parse().map_err(|_| PadicError::Parse(s.to_string()))?;
            Ok(self.from_bigint(&v))
        }
    }

    /// Embed an integer given as a BigInt, returning (valuation in 𝔩-units, unit).
    pub fn split_bigint(&self, x: &BigInt) -> Option<(i64, Elt)> {
        if x.is_zero() {
            return None;
        }
        let l = BigInt::from(self.ell);
        let mut x = x.clone();
        let mut v = 0i64;
        while (&x % &l).is_zero() {
            x /= &l;
            v += 1;
        }
        let unit = self.mul(self.from_bigint(&x), self.pow(self.eps, v as u64));
        Some((v * self.e as i64, unit))
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", serde_json::to_string(self).map_err(|_| fmt::Error)?)
    }
}
