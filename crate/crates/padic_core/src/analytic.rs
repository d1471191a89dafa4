//! Teichmüller lifts, the l-adic logarithm and Hensel roots.

use crate::error::{PadicError, Result};
use crate::ring::Ring;
use crate::scalar::PadicScalar;

/// The (l-1)-st root of unity congruent to `u` modulo 𝔩.
pub fn teichmuller(ring: &Ring, u: u64) -> Result<PadicScalar> {
    if u % ring.ell() == 0 {
        return Err(PadicError::NotUnit);
    }
    let t = ring.teichmuller(u);
    Ok(PadicScalar::from_unit(ring, 0, t, ring.prec() as i64))
}

/// A lower bound for min_{k ≥ k0} (k·r - e·v_l(k)), using v_l(k) ≤ j on
/// [l^j, l^{j+1}). Needs r ≥ 1.
pub fn linear_minus_valuation(ell: u64, e: i64, r: i64, k0: u64) -> i64 {
    let mut best = i64::MAX;
    let mut j = 0i64;
    let mut p: u128 = 1;
    while p * (ell as u128) <= k0 as u128 {
        p *= ell as u128;
        j += 1;
    }
    loop {
        let start = (p.max(k0 as u128)).min(i64::MAX as u128 / 4) as i64;
        best = best.min(start.saturating_mul(r) - e * j);
        // from here the block minima increase once l^j·r·(l-1) ≥ e
        if (p as i128) * (r as i128) * (ell as i128 - 1) >= e as i128 || j > 62 {
            return best;
        }
        p *= ell as u128;
        j += 1;
    }
}

/// l-adic logarithm of a unit, with log(ω) = 0 on roots of unity.
///
/// The error exponent of the result is the smaller of the precision carried
/// by the partial sums and the valuation bound on the first omitted term.
/// `want` is a required absolute precision in 𝔩-units.
pub fn padic_log(x: &PadicScalar, want: Option<i64>) -> Result<PadicScalar> {
    if !x.is_unit() {
        return Err(PadicError::NotUnit);
    }
    let ring = x.ring();
    let om = teichmuller(ring, x.residue())?;
    let y = x.div(&om)?;
    let z = y.sub(&PadicScalar::one(ring));
    let result = if z.is_zero() {
        z
    } else {
        let r = z.w();
        debug_assert!(r >= 1);
        let e = ring.e() as i64;
        let mut sum = PadicScalar::zero_to(ring, crate::scalar::EXACT);
        let mut pow = z.clone();
        let mut k: u64 = 1;
        loop {
            let term = pow.div(&PadicScalar::from_int(ring, k as i64))?;
            sum = if k % 2 == 1 { sum.add(&term) } else { sum.sub(&term) };
            let tail = linear_minus_valuation(ring.ell(), e, r, k + 1);
            if tail >= sum.abs_prec() {
                break sum;
            }
            if tail >= z.abs_prec() + (k as i64) * r {
                break sum.truncate(tail);
            }
            k += 1;
            pow = pow.mul(&z);
        }
    };
    if let Some(w) = want {
        if result.abs_prec() < w {
            return Err(PadicError::PrecisionExhausted { achieved: result.abs_prec(), wanted: w });
        }
    }
    Ok(result)
}

/// The unique a ≡ target (mod 𝔩) with a^d = u, by Newton iteration.
pub fn hensel_root(d: u64, u: &PadicScalar, target_residue: u64) -> Result<PadicScalar> {
    let ring = u.ring();
    let ell = ring.ell();
    if d == 0 || d % ell == 0 {
        return Err(PadicError::BadExponent(d));
    }
    if !u.is_unit() {
        return Err(PadicError::NotUnit);
    }
    let t = target_residue % ell;
    let ue = u.to_elt()?;
    if t == 0 || ring.residue(ring.pow(ring.from_u64(t), d)) != ring.residue(ue) {
        return Err(PadicError::NoRoot);
    }
    let mut a = ring.from_u64(t);
    let dd = ring.from_u64(d);
    let mut steps = 0;
    loop {
        let f = ring.sub(ring.pow(a, d), ue);
        if f.is_zero() {
            break;
        }
        let fp = ring.mul(dd, ring.pow(a, d - 1));
        let next = ring.sub(a, ring.mul(f, ring.inv(fp)?));
        steps += 1;
        if next == a || steps > 2 * ring.prec() + 4 {
            a = next;
            break;
        }
        a = next;
    }
    Ok(PadicScalar::from_unit(ring, 0, a, u.abs_prec()))
}
