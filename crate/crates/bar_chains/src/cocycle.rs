//! Matrix representations of finite groups, adjoint 1-cocycles and their
//! trace pairing on 2-cycles.

use crate::chain::{boundary, BarChain};
use crate::error::{ChainError, Result};
use crate::group::{FiniteGroup, GroupCtx, MatrixGroup};
use padic_core::{Elt, Mat, Ring};
use std::collections::VecDeque;

/// ρ: G → GL_d(O/𝔩^P), checked to be a homomorphism.
#[derive(Clone, Debug)]
pub struct MatrixRep {
    ring: Ring,
    dim: usize,
    images: Vec<Mat>,
    inverses: Vec<Mat>,
}

impl MatrixRep {
    pub fn new(g: &FiniteGroup, ring: &Ring, images: Vec<Mat>) -> Result<Self> {
        if images.len() != g.order() {
            return Err(ChainError::Mismatch);
        }
        let dim = images[0].rows;
        if images.iter().any(|m| m.rows != dim || m.cols != dim) {
            return Err(ChainError::Mismatch);
        }
        for a in g.elements() {
            for b in g.elements() {
                let ab = images[a as usize].mul(ring, &images[b as usize])?;
                if ab != images[g.mul(a, b) as usize] {
                    return Err(ChainError::NotAHomomorphism(a, b));
                }
            }
        }
        let inverses = images.iter().map(|m| m.inv(ring)).collect::<padic_core::Result<Vec<_>>>()?;
        Ok(MatrixRep { ring: ring.clone(), dim, images, inverses })
    }

    /// Extends generator images multiplicatively, then checks.
    pub fn from_generators(g: &FiniteGroup, ring: &Ring, gens: &[u32], images: &[Mat]) -> Result<Self> {
        if gens.len() != images.len() || images.is_empty() {
            return Err(ChainError::Mismatch);
        }
        let dim = images[0].rows;
        let mut all: Vec<Option<Mat>> = vec![None; g.order()];
        all[0] = Some(Mat::identity(ring, dim));
        let mut queue = VecDeque::from([0u32]);
        while let Some(x) = queue.pop_front() {
            for (&s, m) in gens.iter().zip(images) {
                let y = g.mul(x, g.check(s)?) as usize;
                if all[y].is_none() {
                    all[y] = Some(all[x as usize].as_ref().unwrap().mul(ring, m)?);
                    queue.push_back(y as u32);
                }
            }
        }
        let all = all.into_iter().collect::<Option<Vec<_>>>().ok_or_else(|| ChainError::InvalidGroup("generators do not generate".into()))?;
        Self::new(g, ring, all)
    }

    pub fn trivial(g: &FiniteGroup, ring: &Ring, dim: usize) -> Self {
        let id = Mat::identity(ring, dim);
        MatrixRep { ring: ring.clone(), dim, images: vec![id.clone(); g.order()], inverses: vec![id; g.order()] }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn image(&self, a: u32) -> &Mat {
        &self.images[a as usize]
    }

    /// Ad(γ)X = ρ(γ)⁻¹ X ρ(γ).
    pub fn ad(&self, a: u32, x: &Mat) -> Mat {
        let r = &self.ring;
        self.inverses[a as usize].mul(r, x).and_then(|y| y.mul(r, &self.images[a as usize])).expect("square matrices of one size")
    }

    /// Pushes a chain of G forward into the matrix group.
    pub fn map_chain(&self, c: &BarChain, mg: &MatrixGroup) -> Result<BarChain> {
        let idx = self.images.iter().map(|m| mg.intern(m)).collect::<Result<Vec<_>>>()?;
        c.try_map_elements(|a| idx.get(a as usize).copied().ok_or(ChainError::BadElement(a)))
    }
}

/// c: G → Mat with c(γ_1γ_2) = c(γ_2) + Ad(γ_2) c(γ_1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdCocycle {
    values: Vec<Mat>,
}

impl AdCocycle {
    pub fn new(g: &FiniteGroup, rep: &MatrixRep, values: Vec<Mat>) -> Result<Self> {
        if values.len() != g.order() || values.iter().any(|m| m.rows != rep.dim || m.cols != rep.dim) {
            return Err(ChainError::Mismatch);
        }
        let c = AdCocycle { values };
        c.check(g, rep)?;
        Ok(c)
    }

    fn check(&self, g: &FiniteGroup, rep: &MatrixRep) -> Result<()> {
        let r = &rep.ring;
        for a in g.elements() {
            for b in g.elements() {
                let rhs = self.value(b).add(r, &rep.ad(b, self.value(a)))?;
                if self.value(g.mul(a, b)) != &rhs {
                    return Err(ChainError::NotACocycle(a, b));
                }
            }
        }
        Ok(())
    }

    /// Extends values on generators by c(x s) = c(s) + Ad(s) c(x), then checks.
    pub fn from_generators(g: &FiniteGroup, rep: &MatrixRep, gens: &[u32], vals: &[Mat]) -> Result<Self> {
        if gens.len() != vals.len() {
            return Err(ChainError::Mismatch);
        }
        let r = &rep.ring;
        let mut all: Vec<Option<Mat>> = vec![None; g.order()];
        all[0] = Some(Mat::zeros(rep.dim, rep.dim));
        let mut queue = VecDeque::from([0u32]);
        while let Some(x) = queue.pop_front() {
            for (&s, v) in gens.iter().zip(vals) {
                let y = g.mul(x, g.check(s)?) as usize;
                if all[y].is_none() {
                    all[y] = Some(v.add(r, &rep.ad(s, all[x as usize].as_ref().unwrap()))?);
                    queue.push_back(y as u32);
                }
            }
        }
        let all = all.into_iter().collect::<Option<Vec<_>>>().ok_or_else(|| ChainError::InvalidGroup("generators do not generate".into()))?;
        Self::new(g, rep, all)
    }

    /// γ ↦ Ad(γ)X - X.
    pub fn coboundary(g: &FiniteGroup, rep: &MatrixRep, x: &Mat) -> Result<Self> {
        let r = &rep.ring;
        let values = g.elements().map(|a| rep.ad(a, x).sub(r, x)).collect::<padic_core::Result<Vec<_>>>()?;
        Ok(AdCocycle { values })
    }

    pub fn value(&self, a: u32) -> &Mat {
        &self.values[a as usize]
    }

    pub fn values(&self) -> &[Mat] {
        &self.values
    }

    pub fn add(&self, ring: &Ring, o: &Self) -> Result<Self> {
        let values = self.values.iter().zip(&o.values).map(|(a, b)| a.add(ring, b)).collect::<padic_core::Result<Vec<_>>>()?;
        Ok(AdCocycle { values })
    }

    pub fn scale(&self, ring: &Ring, s: Elt) -> Self {
        AdCocycle { values: self.values.iter().map(|a| a.scale(ring, s)).collect() }
    }
}

/// Chain coefficients mod l^k read in O/𝔩^P; needs 𝔩^P | l^k.
pub fn coeff_in_ring(ring: &Ring, c: &BarChain) -> Result<()> {
    let m = c.modulus();
    if m.ell() != ring.ell() || (m.k() as u64) * (ring.e() as u64) < ring.prec() as u64 {
        return Err(ChainError::BadModulus(format!("coefficients mod {m} do not determine O/𝔩^{}", ring.prec())));
    }
    Ok(())
}

/// Tr(Ad(γ_2) c_1(γ_1) · c_2(γ_2)), a 2-cocycle with trivial coefficients.
pub fn cup_cochain(g: &FiniteGroup, rep: &MatrixRep, c1: &AdCocycle, c2: &AdCocycle, a: u32, b: u32) -> Result<Elt> {
    let r = &rep.ring;
    let x = rep.ad(g.check(b)?, c1.value(g.check(a)?));
    Ok(x.mul(r, c2.value(b))?.trace(r))
}

/// Σ coeff · Tr(Ad(γ_2) c_1(γ_1) · c_2(γ_2)) over the terms [γ_1|γ_2] of a 2-cycle.
pub fn cup_pair(g: &FiniteGroup, rep: &MatrixRep, c1: &AdCocycle, c2: &AdCocycle, z: &BarChain) -> Result<Elt> {
    if z.degree() != 2 {
        return Err(ChainError::Mismatch);
    }
    if !boundary(z, g).is_zero() {
        return Err(ChainError::NotACycle);
    }
    let r = &rep.ring;
    coeff_in_ring(r, z)?;
    let mut acc = r.zero();
    for (t, k) in z.terms() {
        acc = r.add(acc, r.mul(r.from_u64(k), cup_cochain(g, rep, c1, c2, t[0], t[1])?));
    }
    Ok(acc)
}
