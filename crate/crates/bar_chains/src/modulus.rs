//! Z/l^k with l^k below 2^62.

use crate::error::{ChainError, Result};
use padic_core::is_prime;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Modulus {
    ell: u64,
    k: u32,
    m: u64,
}

impl Modulus {
    pub fn new(ell: u64, k: u32) -> Result<Self> {
        if ell < 2 || !is_prime(ell) {
            return Err(ChainError::BadModulus(format!("{ell} is not prime")));
        }
        if k == 0 {
            return Err(ChainError::BadModulus("exponent must be positive".into()));
        }
        let mut m: u64 = 1;
        for _ in 0..k {
            m = m.checked_mul(ell).filter(|&x| x < 1 << 62).ok_or_else(|| ChainError::BadModulus(format!("{ell}^{k} is too large")))?;
        }
        Ok(Modulus { ell, k, m })
    }

    /// Parses "3^4".
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || ChainError::Parse(format!("modulus {s:?}, expected l^k"));
        let (a, b) = s.trim().split_once('^').ok_or_else(bad)?;
        Self::new(a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?)
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }
    pub fn k(&self) -> u32 {
        self.k
    }
    pub fn value(&self) -> u64 {
        self.m
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.m {
            s - self.m
        } else {
            s
        }
    }
    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.m - b
        }
    }
    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.m - a
        }
    }
    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.m as u128) as u64
    }

    pub fn from_i64(&self, x: i64) -> u64 {
        x.rem_euclid(self.m as i64) as u64
    }

    /// Signed representative in (-m/2, m/2].
    pub fn signed(&self, a: u64) -> i64 {
        if a > self.m / 2 {
            a as i64 - self.m as i64
        } else {
            a as i64
        }
    }

    /// v_l(a), with v(0) = k.
    pub fn valuation(&self, mut a: u64) -> u32 {
        if a == 0 {
            return self.k;
        }
        let mut v = 0;
        while a % self.ell == 0 {
            a /= self.ell;
            v += 1;
        }
        v
    }

    pub fn pow_ell(&self, v: u32) -> u64 {
        if v >= self.k {
            0
        } else {
            self.ell.pow(v)
        }
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        if a % self.ell == 0 {
            return None;
        }
        let (mut r0, mut r1) = (self.m as i128, a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Some(t0.rem_euclid(self.m as i128) as u64)
    }

    /// a = l^v·u with u a unit; None for a = 0.
    pub fn split(&self, a: u64) -> Option<(u32, u64)> {
        if a == 0 {
            return None;
        }
        let v = self.valuation(a);
        Some((v, a / self.ell.pow(v)))
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.ell, self.k)
    }
}
