//! Interpolation of iterates ψ^t = Σ C(t,k) Δ^k(x) and the logarithmic
//! vector field X_ψ = Σ (-1)^(k-1) Δ^k(x)/k.

use crate::error::{FlowError, Result};
use crate::map::{delta_powers, SeriesMap};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use padic_core::{cap_n, fmt_rational, linear_minus_valuation, rational_valuation, PadicScalar, Ring};
use serde::{Deserialize, Serialize};
use series_ring::{TruncSeries, VectorField};

/// Which estimate justifies a certificate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Basis {
    /// N ≥ 2 and a > 1/((l-1)(N-1)): every |t| ≤ 1 works.
    LargeRadius,
    /// ψ ≡ id mod 𝔪^2: |t| ≤ l^(-1/(a(l-1))).
    SmallTime,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergenceCertificate {
    pub radius_exponent: BigRational,
    /// Times with v_l(t) ≥ this are covered.
    pub time_exponent: BigRational,
    pub basis: Basis,
    pub congruence_order: i64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertificateJson {
    pub radius_exponent: String,
    pub time_exponent: String,
    pub basis: Basis,
    pub congruence_order: i64,
}

impl ConvergenceCertificate {
    pub fn to_json(&self) -> CertificateJson {
        CertificateJson {
            radius_exponent: fmt_rational(&self.radius_exponent),
            time_exponent: fmt_rational(&self.time_exponent),
            basis: self.basis,
            congruence_order: self.congruence_order,
        }
    }
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Certificate for ψ on the closed polydisk of radius l^(-a).
pub fn certify(psi: &SeriesMap, a: &BigRational) -> Result<ConvergenceCertificate> {
    let n_cong = psi.congruence_order();
    if n_cong < 2 {
        return Err(FlowError::CongruenceTooWeak(n_cong));
    }
    let ring = psi.ring();
    let e = rat(ring.e() as i64);
    if !a.is_positive() || a * &e > rat(1) {
        return Err(FlowError::Series(series_ring::SeriesError::BadRadius));
    }
    let l1 = rat(ring.ell() as i64 - 1);
    let threshold = (&l1 * rat(n_cong - 1)).recip();
    let (time_exponent, basis) = if *a > threshold {
        (rat(0), Basis::LargeRadius)
    } else {
        ((a * &l1).recip(), Basis::SmallTime)
    };
    Ok(ConvergenceCertificate { radius_exponent: a.clone(), time_exponent, basis, congruence_order: n_cong })
}

/// The time parameter of an iterate or flow.
#[derive(Clone, Debug)]
pub enum Time {
    Rational(BigRational),
    Scalar(PadicScalar),
}

impl Time {
    pub fn int(k: i64) -> Time {
        Time::Rational(rat(k))
    }

    /// l-adic valuation, None for zero.
    pub fn valuation(&self, ell: u64) -> Option<BigRational> {
        match self {
            Time::Rational(q) if q.is_zero() => None,
            Time::Rational(q) => Some(rat(rational_valuation(q, ell))),
            Time::Scalar(s) if s.is_zero() => None,
            Time::Scalar(s) => Some(s.valuation()),
        }
    }

    /// Whether t is known to lie in Z_l.
    fn in_zl(&self, ring: &Ring) -> bool {
        match self {
            Time::Rational(q) => q.is_zero() || rational_valuation(q, ring.ell()) >= 0,
            Time::Scalar(s) => ring.e() == 1 && (s.is_zero() || s.w() >= 0),
        }
    }

    pub fn scalar(&self, ring: &Ring) -> PadicScalar {
        match self {
            Time::Rational(q) => PadicScalar::from_rational(ring, q),
            Time::Scalar(s) => s.clone(),
        }
    }

    /// C(t, k), exact when t is rational.
    pub fn binomial(&self, ring: &Ring, k: u64) -> PadicScalar {
        match self {
            Time::Rational(q) => PadicScalar::from_rational(ring, &binomial_rational(q, k)),
            Time::Scalar(s) => {
                let mut acc = PadicScalar::one(ring);
                for j in 0..k {
                    acc = acc.mul(&s.sub(&PadicScalar::from_int(ring, j as i64)));
                }
                let fact = (1..=k).fold(BigInt::one(), |a, j| a * BigInt::from(j));
                acc.mul_rational(&BigRational::new(BigInt::one(), fact))
            }
        }
    }
}

pub fn binomial_rational(t: &BigRational, k: u64) -> BigRational {
    let mut acc = BigRational::one();
    for j in 0..k {
        acc = acc * (t - rat(j as i64)) / rat(j as i64 + 1);
    }
    acc
}

fn check_time(psi: &SeriesMap, t: &Time, cert: &ConvergenceCertificate) -> Result<()> {
    if cert.congruence_order != psi.congruence_order() {
        return Err(FlowError::CertificateMismatch);
    }
    if let Some(v) = t.valuation(psi.ring().ell()) {
        if v < cert.time_exponent {
            return Err(FlowError::OutsideRegion(format!(
                "v(t) = {} below the certified {}",
                fmt_rational(&v),
                fmt_rational(&cert.time_exponent)
            )));
        }
        if v.is_negative() {
            return Err(FlowError::OutsideRegion("v(t) < 0".into()));
        }
    }
    Ok(())
}

/// Number of terms K and the order reached by every omitted term of
/// Σ C(t,k)Δ^k(x).
fn iterate_cutoff(psi: &SeriesMap, t: &Time) -> Result<(usize, i64)> {
    let ring = psi.ring();
    let n = psi.n();
    let step = psi.congruence_order() - 1;
    if t.in_zl(ring) {
        let k = ((n - 1).max(0) + step - 1) / step;
        return Ok((k as usize, k * step + 1));
    }
    // C(t,k) may carry up to v(k!) ≤ (k-1)/(l-1) in the denominator
    let e = ring.e() as i64;
    let l1 = ring.ell() as i64 - 1;
    let slope = rat(step) - BigRational::new(BigInt::from(e), BigInt::from(l1));
    if !slope.is_positive() {
        return Err(FlowError::OutsideRegion("time outside Z_l needs N - 1 > e/(l - 1)".into()));
    }
    let mut k = 1i64;
    loop {
        let b = rat(1 + k * step) - BigRational::new(BigInt::from(e * (k - 1)), BigInt::from(l1));
        if b >= rat(n) {
            return Ok((k as usize, n));
        }
        k += 1;
    }
}

/// ψ^t at certified precision.
pub fn interpolate_iterate(psi: &SeriesMap, t: &Time, cert: &ConvergenceCertificate) -> Result<SeriesMap> {
    check_time(psi, t, cert)?;
    let ring = psi.ring().clone();
    let (kmax, tail) = iterate_cutoff(psi, t)?;
    let deltas = delta_powers(psi, kmax.saturating_sub(1))?;
    let m = psi.m();
    let mut out: Vec<TruncSeries> = (0..m).map(|_| TruncSeries::zero(&ring, m, tail)).collect();
    for (k, dk) in deltas.iter().enumerate().take(kmax.max(1)) {
        let c = t.binomial(&ring, k as u64);
        for j in 0..m {
            out[j] = out[j].add(&dk[j].scale(&c))?;
        }
    }
    Ok(SeriesMap::new(out)?)
}

/// X_ψ with a certified tail.
pub fn vector_field_log(psi: &SeriesMap) -> Result<VectorField> {
    let n_cong = psi.congruence_order();
    if n_cong < 2 {
        return Err(FlowError::CongruenceTooWeak(n_cong));
    }
    let ring = psi.ring().clone();
    let (ell, e) = (ring.ell(), ring.e() as i64);
    let n = psi.n();
    // term k lies in 𝔪^(k(N-1)+1-e·v(k))
    let mut kmax = 1u64;
    while 1 + linear_minus_valuation(ell, e, n_cong - 1, kmax) < n {
        kmax += 1;
    }
    let tail = 1 + linear_minus_valuation(ell, e, n_cong - 1, kmax);
    let deltas = delta_powers(psi, kmax as usize - 1)?;
    let m = psi.m();
    let mut out: Vec<TruncSeries> = (0..m).map(|_| TruncSeries::zero(&ring, m, tail)).collect();
    for (k, dk) in deltas.iter().enumerate().skip(1) {
        let sign = if k % 2 == 1 { 1 } else { -1 };
        let c = PadicScalar::from_rational(&ring, &BigRational::new(BigInt::from(sign), BigInt::from(k as i64)));
        for j in 0..m {
            out[j] = out[j].add(&dk[j].scale(&c))?;
        }
    }
    Ok(VectorField::new(out)?)
}

/// Lower bound 1 + a - N(1, a(N-1)) on the log Gauss norm of X_ψ at radius
/// l^(-a), valid for ψ ≡ id mod 𝔪^N.
pub fn log_field_norm_bound(ell: u64, congruence: i64, a: &BigRational) -> BigRational {
    let f = a * rat(congruence - 1);
    rat(1) + a - cap_n(ell, &rat(1), &f).value
}
