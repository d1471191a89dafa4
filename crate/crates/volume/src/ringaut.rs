//! Automorphisms of O/𝔩^P, given by the image of π.

use crate::error::{Result, VolError};
use padic_core::{Elt, Mat, PadicScalar, Ring};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingAutomorphism {
    pi_image: Option<Elt>,
}

impl RingAutomorphism {
    pub fn identity() -> Self {
        RingAutomorphism { pi_image: None }
    }

    /// π ↦ x, for x a root of the Eisenstein polynomial.
    pub fn from_pi_image(ring: &Ring, x: Elt) -> Result<Self> {
        if x == ring.pi() {
            return Ok(Self::identity());
        }
        if ring.valuation(x) != 1 {
            return Err(VolError::InvalidDatum("image of π must have valuation 1".into()));
        }
        let spec = ring.spec();
        let low = if spec.eisenstein.is_empty() { vec![-(spec.ell as i64)] } else { spec.eisenstein.clone() };
        let mut f = ring.pow(x, ring.e() as u64);
        for (i, &c) in low.iter().enumerate() {
            f = ring.add(f, ring.mul(ring.from_i64(c), ring.pow(x, i as u64)));
        }
        if !f.is_zero() {
            return Err(VolError::InvalidDatum("image of π is not a root of the Eisenstein polynomial".into()));
        }
        Ok(RingAutomorphism { pi_image: Some(x) })
    }

    pub fn is_identity(&self) -> bool {
        self.pi_image.is_none()
    }

    pub fn pi_image(&self, ring: &Ring) -> Elt {
        self.pi_image.unwrap_or_else(|| ring.pi())
    }

    pub fn apply(&self, ring: &Ring, a: Elt) -> Elt {
        let x = match self.pi_image {
            None => return a,
            Some(x) => x,
        };
        let mut acc = ring.zero();
        let mut p = ring.one();
        for c in ring.coords(a) {
            acc = ring.add(acc, ring.mul(ring.from_u64(c), p));
            p = ring.mul(p, x);
        }
        acc
    }

    pub fn apply_mat(&self, ring: &Ring, m: &Mat) -> Mat {
        if self.is_identity() {
            return m.clone();
        }
        let mut out = m.clone();
        for i in 0..m.rows {
            for j in 0..m.cols {
                out.set(i, j, self.apply(ring, m.get(i, j)));
            }
        }
        out
    }

    /// π^w·u ↦ φ(π)^w·φ(u), keeping the absolute precision.
    pub fn apply_scalar(&self, x: &PadicScalar) -> PadicScalar {
        if self.is_identity() || x.is_zero() {
            return x.clone();
        }
        let ring = x.ring();
        let u = self.apply(ring, x.unit());
        // φ(π) = π·(unit), so φ(π)^w = π^w·unit^w
        let pu = ring.div_pi(self.pi_image(ring));
        let unit = ring.mul(u, ring.pow(pu, x.w().unsigned_abs()));
        let unit = if x.w() < 0 { ring.inv(unit).expect("unit") } else { unit };
        // φ(π)/π is known to one digit less than φ(π)
        let abs = x.abs_prec().min(x.w() + ring.prec() as i64 - 1);
        PadicScalar::from_unit(ring, x.w(), unit, abs)
    }

    /// self ∘ other.
    pub fn compose(&self, ring: &Ring, other: &Self) -> Self {
        match (self.pi_image, other.pi_image) {
            (None, _) => other.clone(),
            (_, None) => self.clone(),
            (Some(_), Some(y)) => {
                let z = self.apply(ring, y);
                if z == ring.pi() {
                    Self::identity()
                } else {
                    RingAutomorphism { pi_image: Some(z) }
                }
            }
        }
    }
}
