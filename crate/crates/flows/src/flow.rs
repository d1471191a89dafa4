//! Flows of vector fields: h_t = Σ c_s t^s/s! with c_0 = x and
//! c_{s+1} = X(c_s).

use crate::error::{FlowError, Result};
use crate::interp::Time;
use crate::map::SeriesMap;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use padic_core::{fmt_rational, PadicScalar, EXACT};
use series_ring::{TruncSeries, VectorField};
use std::cell::RefCell;

#[derive(Clone, Debug)]
pub struct FlowSeries {
    field: VectorField,
    radius_exponent: BigRational,
    coeffs: RefCell<Vec<Vec<TruncSeries>>>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// The flow of X, after checking ‖X‖_r ≤ r for r = l^(-a).
pub fn flow_from_field(x: &VectorField, a: &BigRational) -> Result<FlowSeries> {
    let g = x.gauss_norm(a)?;
    if let Some(ln) = &g.log_norm {
        if ln < a {
            return Err(FlowError::NormViolation { have: fmt_rational(ln), need: fmt_rational(a) });
        }
    }
    let (ring, m) = (x.ring().clone(), x.m());
    let c0 = (0..m).map(|j| TruncSeries::var(&ring, m, x.n(), j)).collect();
    Ok(FlowSeries { field: x.clone(), radius_exponent: a.clone(), coeffs: RefCell::new(vec![c0]) })
}

impl FlowSeries {
    pub fn field(&self) -> &VectorField {
        &self.field
    }

    pub fn radius_exponent(&self) -> &BigRational {
        &self.radius_exponent
    }

    /// The time series converges for v_l(t) > this value.
    pub fn time_log_radius(&self) -> BigRational {
        BigRational::new(BigInt::one(), BigInt::from(self.field.ring().ell() - 1))
    }

    /// c_s = X^s(x).
    pub fn coefficient(&self, s: usize) -> Result<Vec<TruncSeries>> {
        let mut cs = self.coeffs.borrow_mut();
        while cs.len() <= s {
            let next = cs.last().unwrap().iter().map(|f| self.field.apply(f)).collect::<std::result::Result<Vec<_>, _>>()?;
            cs.push(next);
        }
        Ok(cs[s].clone())
    }

    fn field_order(&self) -> i64 {
        self.field.comps().iter().map(|c| c.order()).min().unwrap_or(EXACT)
    }

    /// h_t at the field's precision.
    pub fn at(&self, t: &Time) -> Result<SeriesMap> {
        let ring = self.field.ring().clone();
        let m = self.field.m();
        let n = self.field.n();
        let id = || SeriesMap::new((0..m).map(|j| TruncSeries::var(&ring, m, n, j)).collect());
        let vt = match t.valuation(ring.ell()) {
            None => return id(),
            Some(v) => v,
        };
        if vt.is_negative() {
            return Err(FlowError::OutsideRegion("v(t) < 0".into()));
        }
        let ord = self.field_order();
        if ord >= n {
            return id();
        }
        let e = rat(ring.e() as i64);
        let l1 = rat(ring.ell() as i64 - 1);
        // c_s t^s/s! lies in 𝔪^(b_s), b_s = 1 + s(ord-1) + e·s·v(t) - e(s-1)/(l-1)
        let slope = rat(ord - 1) + &e * &vt - &e / &l1;
        if !slope.is_positive() {
            return Err(FlowError::OutsideRegion(format!(
                "v(t) = {} too small for a field of order {ord}",
                fmt_rational(&vt)
            )));
        }
        let bound = |s: i64| rat(1 + s * (ord - 1)) + &e * rat(s) * &vt - &e * rat(s - 1) / &l1;
        let mut smax = 1i64;
        while bound(smax) < rat(n) {
            smax += 1;
        }
        let mut out: Vec<TruncSeries> = (0..m).map(|_| TruncSeries::zero(&ring, m, n)).collect();
        let mut fact = BigInt::one();
        for s in 0..smax {
            if s > 0 {
                fact *= BigInt::from(s);
            }
            let c = match t {
                Time::Rational(q) => PadicScalar::from_rational(&ring, &(num_traits::pow(q.clone(), s as usize) / BigRational::from_integer(fact.clone()))),
                Time::Scalar(x) => x.pow(s as u64).mul_rational(&BigRational::new(BigInt::one(), fact.clone())),
            };
            let cs = self.coefficient(s as usize)?;
            for j in 0..m {
                out[j] = out[j].add(&cs[j].scale(&c))?;
            }
        }
        SeriesMap::new(out)
    }
}
