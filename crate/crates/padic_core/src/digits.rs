//! Digit statistics and the factorial valuation estimates used for tail bounds.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

/// Base-l digit sum s_l(a) and digit count d_l(a); both are 0 for a = 0.
pub fn digit_stats(ell: u64, a: u64) -> (u64, u64) {
    let (mut s, mut d, mut x) = (0, 0, a);
    while x > 0 {
        s += x % ell;
        d += 1;
        x /= ell;
    }
    (s, d)
}

pub fn digit_count(ell: u64, a: u64) -> u64 {
    digit_stats(ell, a).1
}

/// v_l(a!) = (a - s_l(a))/(l - 1).
pub fn factorial_valuation(ell: u64, a: u64) -> u64 {
    (a - digit_stats(ell, a).0) / (ell - 1)
}

/// Exact v_l(a_0!…a_n!/(|a|+n)!).
pub fn multinomial_valuation(ell: u64, a: &[u64]) -> i64 {
    let n = a.len() as u64 - 1;
    let total: u64 = a.iter().sum::<u64>() + n;
    a.iter().map(|&x| factorial_valuation(ell, x) as i64).sum::<i64>() - factorial_valuation(ell, total) as i64
}

/// Lower bound -v_l(n!) - (n+1)·d_l(|a|+n) for the valuation of
/// a_0!…a_n!/(|a|+n)!, where n + 1 is the length of `a`.
pub fn multinomial_valuation_bound(ell: u64, a: &[u64]) -> i64 {
    assert!(!a.is_empty(), "need at least one entry");
    let n = a.len() as u64 - 1;
    let total: u64 = a.iter().sum::<u64>() + n;
    -(factorial_valuation(ell, n) as i64) - (n as i64 + 1) * digit_count(ell, total) as i64
}

/// The same bound expressed through |a| only.
pub fn multinomial_bound_by_degree(ell: u64, n: u64, degree: u64) -> i64 {
    -(factorial_valuation(ell, n) as i64) - (n as i64 + 1) * digit_count(ell, degree + n) as i64
}

/// Result of a supremum of c·d_l(x) - f·x over an integer range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigitSup {
    pub value: BigRational,
    pub argmax: u64,
    /// Every x at or beyond this point was certified not to beat `value`.
    pub cutoff: u64,
}

/// sup_{x ≥ x0} (c·d_l(x) - f·x) for c, f > 0 and x0 ≥ 1.
///
/// On each digit-count block [l^i, l^{i+1}) the first admissible point wins,
/// so the search runs over block starts and stops once the block values can
/// only decrease.
pub fn digit_linear_sup(ell: u64, c: &BigRational, f: &BigRational, x0: u64) -> DigitSup {
    assert!(c.is_positive() && f.is_positive() && x0 >= 1);
    let l = BigInt::from(ell);
    let val = |x: &BigInt| -> BigRational {
        let mut d = 0u64;
        let mut t = x.clone();
        while t.is_positive() {
            t /= &l;
            d += 1;
        }
        c * BigRational::from_integer(BigInt::from(d)) - f * BigRational::from_integer(x.clone())
    };
    let x0b = BigInt::from(x0);
    let mut best = val(&x0b);
    let mut arg = x0b.clone();
    let mut p = BigInt::from(1u32);
    while p <= x0b {
        p *= &l;
    }
    loop {
        let v = val(&p);
        if v > best {
            best = v;
            arg = p.clone();
        }
        // later block starts differ by c - f·p·l^j·(l-1) ≤ 0 once this holds
        if f * BigRational::from_integer(&p * BigInt::from(ell - 1)) >= *c {
            let clamp = |x: &BigInt| u64::try_from(x).unwrap_or(u64::MAX);
            return DigitSup { value: best, argmax: clamp(&arg), cutoff: clamp(&p) };
        }
        p *= &l;
    }
}

/// N(c, f) = sup_{x ≥ 1} (c·d_l(x) - f·x).
pub fn cap_n(ell: u64, c: &BigRational, f: &BigRational) -> DigitSup {
    digit_linear_sup(ell, c, f, 1)
}

/// min_{x ≥ x0} (f·x - c·d_l(x)), the worst valuation of a tail term.
pub fn tail_min(ell: u64, c: &BigRational, f: &BigRational, x0: u64) -> BigRational {
    -digit_linear_sup(ell, c, f, x0.max(1)).value
}
