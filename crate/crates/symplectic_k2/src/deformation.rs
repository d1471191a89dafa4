//! First-order deformations ρ = ρ₀(1 + c) and the ∧²V-component of κ′.

use crate::algebra::{s_group_mul, SElement, VMatrix, Wedge2};
use crate::error::{Result, SympError};
use bar_chains::{boundary, coeff_in_ring, cup_cochain, cup_pair, AdCocycle, BarChain, ChainError, FiniteGroup, GroupCtx, MatrixRep};
use padic_core::{Elt, Mat};
use serde::Serialize;
use std::collections::VecDeque;

/// ρ₀ together with c = Σ_k c_k ⊗ e_k, each c_k a trace-zero Ad-cocycle.
#[derive(Clone, Debug)]
pub struct DeformationCocycle {
    pub rep0: MatrixRep,
    pub comps: Vec<AdCocycle>,
}

impl DeformationCocycle {
    pub fn new(g: &FiniteGroup, rep0: &MatrixRep, comps: Vec<AdCocycle>) -> Result<Self> {
        if comps.is_empty() {
            return Err(SympError::Shape("rank 0".into()));
        }
        let r = rep0.ring();
        for c in &comps {
            if c.values().len() != g.order() {
                return Err(ChainError::Mismatch.into());
            }
            if let Some(a) = g.elements().find(|&a| !c.value(a).trace(r).is_zero()) {
                return Err(SympError::NotTraceZero(a));
            }
        }
        Ok(DeformationCocycle { rep0: rep0.clone(), comps })
    }

    pub fn rank(&self) -> usize {
        self.comps.len()
    }

    pub fn value(&self, a: u32) -> VMatrix {
        VMatrix { comps: self.comps.iter().map(|c| c.value(a).clone()).collect() }
    }

    /// The section γ ↦ (ρ₀(γ), c(γ), 0) of S(A).
    pub fn section(&self, a: u32) -> SElement {
        let r = self.rep0.ring();
        SElement { gamma: self.rep0.image(a).clone(), m: self.value(a), omega: Wedge2::zero(r, self.rank()) }
    }
}

/// κ′(γ₁, γ₂) = Tr_alt(ρ₀(γ₂)⁻¹c(γ₁)ρ₀(γ₂), c(γ₂)), read off as the ∧²V
/// coordinate of s(γ₁)s(γ₂) for the section s.
pub fn kappa(data: &DeformationCocycle, a: u32, b: u32) -> Result<Wedge2> {
    let r = data.rep0.ring();
    Ok(s_group_mul(r, &data.section(a), &data.section(b))?.omega)
}

/// κ′(b,c) - κ′(ab,c) + κ′(a,bc) - κ′(a,b) = 0 on every triple.
pub fn check_kappa_cocycle(g: &FiniteGroup, data: &DeformationCocycle) -> Result<()> {
    let r = data.rep0.ring();
    let n = g.order() as u32;
    let mut table = Vec::with_capacity((n * n) as usize);
    for a in 0..n {
        for b in 0..n {
            table.push(kappa(data, a, b)?);
        }
    }
    let k = |a: u32, b: u32| &table[(a * n + b) as usize];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let s = k(b, c).add(r, &k(g.mul(a, b), c).neg(r)).add(r, k(a, g.mul(b, c))).add(r, &k(a, b).neg(r));
                if !s.is_zero() {
                    return Err(SympError::NotACocycle(a, b, c));
                }
            }
        }
    }
    Ok(())
}

fn check_cycle(g: &FiniteGroup, data: &DeformationCocycle, z: &BarChain) -> Result<()> {
    if z.degree() != 2 {
        return Err(ChainError::Mismatch.into());
    }
    if !boundary(z, g).is_zero() {
        return Err(ChainError::NotACycle.into());
    }
    coeff_in_ring(data.rep0.ring(), z)?;
    Ok(())
}

/// ⟨κ′, z⟩ for a 2-cycle z: the first-order ω evaluated on the fundamental class.
pub fn omega_from_deformation(g: &FiniteGroup, data: &DeformationCocycle, z: &BarChain) -> Result<Wedge2> {
    check_cycle(g, data, z)?;
    let r = data.rep0.ring();
    let mut acc = Wedge2::zero(r, data.rank());
    for (t, k) in z.terms() {
        acc = acc.add(r, &kappa(data, t[0], t[1])?.scale(r, r.from_u64(k)));
    }
    Ok(acc)
}

/// Both routes to ω(c₁, c₂) on one 2-cycle.
#[derive(Clone, Debug, Serialize)]
pub struct OmegaReport {
    /// ⟨c₁, c₂⟩ by the cup product.
    pub pairing: String,
    /// ⟨c₂, c₁⟩.
    pub pairing_swapped: String,
    /// The e₁∧e₂ coefficient of ω for c = c₁e₁ + c₂e₂.
    pub omega: String,
    /// ω = ⟨c₁,c₂⟩ - ⟨c₂,c₁⟩ on the cycle.
    pub equal: bool,
    /// κ′_12 = c₁∪c₂ - c₂∪c₁ on every pair of group elements.
    pub cochain_equal: bool,
    #[serde(skip)]
    pub values: [Elt; 3],
}

pub fn omega_vs_cup(g: &FiniteGroup, rep0: &MatrixRep, c1: &AdCocycle, c2: &AdCocycle, z: &BarChain) -> Result<OmegaReport> {
    let r = rep0.ring();
    let data = DeformationCocycle::new(g, rep0, vec![c1.clone(), c2.clone()])?;
    let w = omega_from_deformation(g, &data, z)?.get(r, 0, 1);
    let p12 = cup_pair(g, rep0, c1, c2, z)?;
    let p21 = cup_pair(g, rep0, c2, c1, z)?;
    let mut cochain_equal = true;
    for a in g.elements() {
        for b in g.elements() {
            let k = kappa(&data, a, b)?.get(r, 0, 1);
            let cup = r.sub(cup_cochain(g, rep0, c1, c2, a, b)?, cup_cochain(g, rep0, c2, c1, a, b)?);
            cochain_equal &= k == cup;
        }
    }
    Ok(OmegaReport {
        pairing: r.format(p12),
        pairing_swapped: r.format(p21),
        omega: r.format(w),
        equal: w == r.sub(p12, p21),
        cochain_equal,
        values: [p12, p21, w],
    })
}

/// ε on all of G from values on generators, checked to be multiplicative.
pub fn character_from_generators(g: &FiniteGroup, ring: &padic_core::Ring, gens: &[u32], vals: &[Elt]) -> Result<Vec<Elt>> {
    if gens.len() != vals.len() {
        return Err(ChainError::Mismatch.into());
    }
    let mut all: Vec<Option<Elt>> = vec![None; g.order()];
    all[0] = Some(ring.one());
    let mut queue = VecDeque::from([0u32]);
    while let Some(x) = queue.pop_front() {
        for (&s, &v) in gens.iter().zip(vals) {
            let y = g.mul(x, g.check(s)?) as usize;
            if all[y].is_none() {
                all[y] = Some(ring.mul(all[x as usize].unwrap(), v));
                queue.push_back(y as u32);
            }
        }
    }
    let all: Vec<Elt> = all.into_iter().collect::<Option<_>>().ok_or_else(|| ChainError::InvalidGroup("generators do not generate".into()))?;
    for a in g.elements() {
        for b in g.elements() {
            if all[g.mul(a, b) as usize] != ring.mul(all[a as usize], all[b as usize]) {
                return Err(SympError::NotACharacter(a, b));
            }
        }
    }
    Ok(all)
}

/// ρ₊ = ρ ⊕ ε⁻¹, after checking det ρ = ε.
pub fn rho_plus(g: &FiniteGroup, rho: &MatrixRep, eps: &[Elt]) -> Result<MatrixRep> {
    let r = rho.ring();
    let d = rho.dim();
    if eps.len() != g.order() {
        return Err(ChainError::Mismatch.into());
    }
    let mut images = Vec::with_capacity(g.order());
    for a in g.elements() {
        let m = rho.image(a);
        if m.det(r)? != eps[a as usize] {
            return Err(SympError::DeterminantMismatch(a));
        }
        let mut big = Mat::zeros(d + 1, d + 1);
        for i in 0..d {
            for j in 0..d {
                big.set(i, j, m.get(i, j));
            }
        }
        big.set(d, d, r.inv(eps[a as usize])?);
        images.push(big);
    }
    Ok(MatrixRep::new(g, r, images)?)
}
