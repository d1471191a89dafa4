//! Conjugation data (σ̃, h, a, φ) and the volume setup.

use crate::error::{Result, VolError};
use crate::linalg::intertwiner;
use crate::ringaut::RingAutomorphism;
use bar_chains::{boundary, coeff_in_ring, BarChain, ChainJson, FiniteGroup, GroupAutomorphism, GroupCtx, GroupSpec, MatrixRep, Modulus};
use padic_core::{Mat, PadicScalar, Ring, RingSpec};
use serde::{Deserialize, Serialize};

/// ρ(σ̃(γ)) = h·φ(ρ(γ))·h⁻¹ with twisting unit a.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugationDatum {
    pub sigma: GroupAutomorphism,
    pub h: Mat,
    pub a: i64,
    pub phi: RingAutomorphism,
}

impl ConjugationDatum {
    pub fn new(sigma: GroupAutomorphism, h: Mat, a: i64, phi: RingAutomorphism) -> Self {
        ConjugationDatum { sigma, h, a, phi }
    }

    /// The identity datum (id, 1, 1, id).
    pub fn identity(g: &FiniteGroup, rho: &MatrixRep) -> Self {
        let ring = rho.ring();
        ConjugationDatum::new(GroupAutomorphism::identity(g), Mat::identity(ring, rho.dim()), 1, RingAutomorphism::identity())
    }

    /// (inn_δ, ρ(δ), 1, id).
    pub fn inner(g: &FiniteGroup, rho: &MatrixRep, delta: u32) -> Self {
        ConjugationDatum::new(GroupAutomorphism::inner(g, delta), rho.image(delta).clone(), 1, RingAutomorphism::identity())
    }

    /// Solves for h when it is not given.
    pub fn with_intertwiner(g: &FiniteGroup, rho: &MatrixRep, sigma: GroupAutomorphism, a: i64, phi: RingAutomorphism) -> Result<Self> {
        let h = intertwiner(g, rho, &sigma, &phi, &[])?;
        Ok(ConjugationDatum::new(sigma, h, a, phi))
    }

    pub fn check(&self, g: &FiniteGroup, rho: &MatrixRep) -> Result<()> {
        let ring = rho.ring();
        if self.h.rows != rho.dim() || !self.h.is_square() {
            return Err(VolError::Shape("h has the wrong size".into()));
        }
        if !self.h.is_invertible(ring) {
            return Err(VolError::InvalidDatum("h is not invertible".into()));
        }
        if self.a.rem_euclid(ring.ell() as i64) == 0 {
            return Err(VolError::InvalidDatum("a is not a unit".into()));
        }
        for x in g.elements() {
            let lhs = rho.image(self.sigma.apply(x)).mul(ring, &self.h)?;
            let rhs = self.h.mul(ring, &self.phi.apply_mat(ring, rho.image(x)))?;
            if lhs != rhs {
                return Err(VolError::InvalidDatum(format!("intertwining fails at element {}", g.label(x))));
            }
        }
        Ok(())
    }

    /// The datum of σ̃∘τ̃: h_σ·φ_σ(h_τ), a_σ·a_τ and φ_σ∘φ_τ.
    pub fn compose(&self, ring: &Ring, tau: &Self) -> Result<Self> {
        let h = self.h.mul(ring, &self.phi.apply_mat(ring, &tau.h))?;
        Ok(ConjugationDatum::new(self.sigma.compose(&tau.sigma), h, self.a * tau.a, self.phi.compose(ring, &tau.phi)))
    }

    /// inn_δ∘σ̃ with h ↦ ρ(δ)·h.
    pub fn relift(&self, g: &FiniteGroup, rho: &MatrixRep, delta: u32) -> Result<Self> {
        let ring = rho.ring();
        let h = rho.image(delta).mul(ring, &self.h)?;
        Ok(ConjugationDatum::new(GroupAutomorphism::inner(g, delta).compose(&self.sigma), h, self.a, self.phi.clone()))
    }

    /// h ↦ h·z.
    pub fn with_h_times(&self, ring: &Ring, z: &Mat) -> Result<Self> {
        Ok(ConjugationDatum::new(self.sigma.clone(), self.h.mul(ring, z)?, self.a, self.phi.clone()))
    }

    /// The twisted action x ↦ a⁻¹·φ(x) on values.
    pub fn act(&self, x: &PadicScalar) -> PadicScalar {
        let ring = x.ring();
        let ai = PadicScalar::from_int(ring, self.a).inv().expect("a is a unit");
        self.phi.apply_scalar(x).mul(&ai)
    }

    /// a⁻¹ modulo the chain modulus.
    pub fn a_inv_mod(&self, m: &Modulus) -> Result<u64> {
        m.inv(m.from_i64(self.a)).ok_or_else(|| VolError::InvalidDatum("a is not a unit".into()))
    }
}

/// Γ, ρ, a fundamental 2-cycle c and conjugation data.
#[derive(Clone, Debug)]
pub struct VolumeSetup {
    pub group: FiniteGroup,
    pub rep: MatrixRep,
    pub cycle: BarChain,
    pub data: Vec<ConjugationDatum>,
}

impl VolumeSetup {
    pub fn new(group: FiniteGroup, rep: MatrixRep, cycle: BarChain, data: Vec<ConjugationDatum>) -> Result<Self> {
        let ring = rep.ring();
        if rep.dim() as u64 % ring.ell() == 0 {
            return Err(VolError::BadExponent(rep.dim() as u64));
        }
        if cycle.degree() != 2 {
            return Err(VolError::Shape(format!("fundamental chain has degree {}, need 2", cycle.degree())));
        }
        if !boundary(&cycle, &group).is_zero() {
            return Err(VolError::Chain(bar_chains::ChainError::NotACycle));
        }
        coeff_in_ring(ring, &cycle)?;
        for d in &data {
            d.check(&group, &rep)?;
        }
        Ok(VolumeSetup { group, rep, cycle, data })
    }

    pub fn ring(&self) -> &Ring {
        self.rep.ring()
    }

    pub fn modulus(&self) -> Modulus {
        self.cycle.modulus()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RepJson {
    pub gens: Vec<u32>,
    pub images: Vec<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DatumJson {
    /// Images of `RepJson::gens` under σ̃.
    pub sigma: Vec<u32>,
    /// Solved for when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<Vec<Vec<String>>>,
    pub a: i64,
    /// Image of π under φ; identity when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi_pi: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SetupJson {
    pub ring: RingSpec,
    pub group: GroupSpec,
    pub rep: RepJson,
    pub cycle: ChainJson,
    pub data: Vec<DatumJson>,
}

impl SetupJson {
    pub fn build(&self) -> Result<VolumeSetup> {
        let ring = Ring::from_spec(&self.ring)?;
        let g = FiniteGroup::from_spec(&self.group)?;
        let images = self.rep.images.iter().map(|m| Mat::parse(&ring, m)).collect::<std::result::Result<Vec<_>, _>>()?;
        let rep = MatrixRep::from_generators(&g, &ring, &self.rep.gens, &images)?;
        let cycle = BarChain::from_json(&self.cycle)?;
        let mut data = Vec::with_capacity(self.data.len());
        for dj in &self.data {
            let sigma = GroupAutomorphism::from_generator_images(&g, &self.rep.gens, &dj.sigma)?;
            let phi = match &dj.phi_pi {
                None => RingAutomorphism::identity(),
                Some(s) => RingAutomorphism::from_pi_image(&ring, ring.parse(s)?)?,
            };
            let datum = match &dj.h {
                Some(h) => ConjugationDatum::new(sigma, Mat::parse(&ring, h)?, dj.a, phi),
                None => ConjugationDatum::with_intertwiner(&g, &rep, sigma, dj.a, phi)?,
            };
            data.push(datum);
        }
        VolumeSetup::new(g, rep, cycle, data)
    }
}
