//! Independence, cocycle and restriction audits of the twist defect.

use crate::defect::{scaled, sub_values, Volume};
use crate::error::{Result, VolError};
use crate::setup::{ConjugationDatum, VolumeSetup};
use bar_chains::{boundary, BarChain, FiniteGroup, GroupAutomorphism, GroupCtx, MatrixRep};
use padic_core::{Mat, PadicScalar};
use regulator::{RegulatorJson, RegulatorValue};
use serde::Serialize;

#[derive(Clone, Debug)]
pub struct AuditLine {
    pub name: String,
    pub residual: RegulatorValue,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AuditJson {
    pub name: String,
    pub residual: RegulatorJson,
    pub pass: bool,
}

impl AuditLine {
    fn new(vol: &Volume, name: String, residual: RegulatorValue) -> Self {
        let pass = vol.negligible(&residual);
        AuditLine { name, residual, pass }
    }

    pub fn to_json(&self) -> AuditJson {
        AuditJson { name: self.name.clone(), residual: self.residual.to_json(), pass: self.pass }
    }
}

fn datum<'v>(vol: &'v Volume, which: usize) -> Result<&'v ConjugationDatum> {
    vol.setup().data.get(which).ok_or_else(|| VolError::Shape(format!("no conjugation datum {which}")))
}

/// B for h versus B for h·z, with z centralizing φ(ρ(Γ)).
pub fn h_independence(vol: &Volume, which: usize, z: &Mat) -> Result<AuditLine> {
    let s = vol.setup();
    let d0 = datum(vol, which)?;
    let d1 = d0.with_h_times(s.ring(), z)?;
    d1.check(&s.group, &s.rep)?;
    let (b0, _) = vol.value_for(d0, &s.cycle)?;
    let (b1, _) = vol.value_for(&d1, &s.cycle)?;
    Ok(AuditLine::new(vol, format!("h-independence[{which}]"), sub_values(&b1, &b0)))
}

/// B for σ̃ versus B for inn_δ∘σ̃ with h ↦ ρ(δ)h.
pub fn lift_independence(vol: &Volume, which: usize, delta: u32) -> Result<AuditLine> {
    let s = vol.setup();
    let d0 = datum(vol, which)?;
    let d1 = d0.relift(&s.group, &s.rep, delta)?;
    d1.check(&s.group, &s.rep)?;
    let (b0, _) = vol.value_for(d0, &s.cycle)?;
    let (b1, _) = vol.value_for(&d1, &s.cycle)?;
    Ok(AuditLine::new(vol, format!("lift-independence[{which}, {}]", s.group.label(delta)), sub_values(&b1, &b0)))
}

/// B_{στ} − B_σ − σ·B_τ for the composite datum, where σ·x = a_σ⁻¹φ_σ(x).
pub fn cocycle_audit(vol: &Volume, pairs: &[(usize, usize)]) -> Result<Vec<AuditLine>> {
    let s = vol.setup();
    let mut out = Vec::with_capacity(pairs.len());
    for &(i, j) in pairs {
        let (ds, dt) = (datum(vol, i)?, datum(vol, j)?);
        let dst = ds.compose(s.ring(), dt)?;
        dst.check(&s.group, &s.rep)?;
        let (bs, _) = vol.value_for(ds, &s.cycle)?;
        let (bt, _) = vol.value_for(dt, &s.cycle)?;
        let (bst, _) = vol.value_for(&dst, &s.cycle)?;
        let act = scaled(&bt, ds.act(&bt.value));
        let r = sub_values(&sub_values(&bst, &bs), &act);
        out.push(AuditLine::new(vol, format!("cocycle[{i}, {j}]"), r));
    }
    Ok(out)
}

/// Replacing c by c + ∂e shifts B by (σ − 1)·Ψ(ρ(e)).
pub fn chain_shift_audit(vol: &Volume, which: usize, e: &BarChain) -> Result<AuditLine> {
    let s = vol.setup();
    let d = datum(vol, which)?;
    let c1 = s.cycle.add(&boundary(e, &s.group))?;
    let (b0, _) = vol.value_for(d, &s.cycle)?;
    let (b1, _) = vol.value_for(d, &c1)?;
    let pe = vol.regulate(e)?;
    let shift = sub_values(&scaled(&pe, d.act(&pe.value)), &pe);
    let r = sub_values(&sub_values(&b1, &b0), &shift);
    Ok(AuditLine::new(vol, format!("chain-shift[{which}]"), r))
}

/// The subgroup on the given elements, with its elements in increasing order.
pub fn subgroup(g: &FiniteGroup, elems: &[u32]) -> Result<(FiniteGroup, Vec<u32>)> {
    let mut el: Vec<u32> = elems.to_vec();
    el.sort_unstable();
    el.dedup();
    if el.first() != Some(&0) {
        return Err(VolError::NotCompatible("subgroup must contain the identity".into()));
    }
    let mut pos = vec![None; g.order()];
    for (i, &x) in el.iter().enumerate() {
        g.check(x)?;
        pos[x as usize] = Some(i as u32);
    }
    let mut table = Vec::with_capacity(el.len());
    for &x in &el {
        let row = el
            .iter()
            .map(|&y| pos[g.mul(x, y) as usize].ok_or_else(|| VolError::NotCompatible("elements are not closed under multiplication".into())))
            .collect::<Result<Vec<u32>>>()?;
        table.push(row);
    }
    let labels = el.iter().map(|&x| g.label(x)).collect();
    Ok((FiniteGroup::from_table(table, labels)?, el))
}

/// The setup restricted to Γ′ = `elems`, with fundamental chain `c_sub`
/// written in subgroup indices.
pub fn restrict(s: &VolumeSetup, elems: &[u32], c_sub: &BarChain) -> Result<(VolumeSetup, Vec<u32>)> {
    let (sub, el) = subgroup(&s.group, elems)?;
    let mut pos = vec![None; s.group.order()];
    for (i, &x) in el.iter().enumerate() {
        pos[x as usize] = Some(i as u32);
    }
    let images = el.iter().map(|&x| s.rep.image(x).clone()).collect();
    let rep = MatrixRep::new(&sub, s.ring(), images)?;
    let mut data = Vec::with_capacity(s.data.len());
    for (k, d) in s.data.iter().enumerate() {
        let perm = el
            .iter()
            .map(|&x| pos[d.sigma.apply(x) as usize].ok_or_else(|| VolError::NotCompatible(format!("datum {k} does not preserve the subgroup"))))
            .collect::<Result<Vec<u32>>>()?;
        let sigma = GroupAutomorphism::from_perm(&sub, perm)?;
        data.push(ConjugationDatum::new(sigma, d.h.clone(), d.a, d.phi.clone()));
    }
    Ok((VolumeSetup::new(sub, rep, c_sub.clone(), data)?, el))
}

/// B′_σ(c′) on Γ′ against index·B_σ(c) + (σ − 1)·Ψ(ρ(e)), where
/// ι(c′) = index·c + ∂e.
pub fn restriction_audit(vol: &Volume, elems: &[u32], c_sub: &BarChain, index: u64) -> Result<Vec<AuditLine>> {
    let s = vol.setup();
    let (rs, el) = restrict(s, elems, c_sub)?;
    if el.len() as u64 * index != s.group.order() as u64 {
        return Err(VolError::NotCompatible(format!("index {index} does not match the subgroup order {}", el.len())));
    }
    let pushed = c_sub.map_elements(|i| el[i as usize]);
    let diff = pushed.sub(&s.cycle.scale(index))?;
    let e = if diff.is_zero() {
        BarChain::zero(3, diff.modulus())
    } else {
        vol.solvers().solve_boundary(&diff).map_err(|_| VolError::NotCompatible("ι(c′) − index·c is not a boundary".into()))?
    };
    let sub_vol = Volume::new(&rs, vol.evaluator().cutoff());
    let pe = vol.regulate(&e)?;
    let ring = s.ring();
    let mut out = Vec::with_capacity(s.data.len());
    for (k, d) in s.data.iter().enumerate() {
        let (b, _) = vol.value_for(d, &s.cycle)?;
        let (bp, _) = sub_vol.value_for(&rs.data[k], &rs.cycle)?;
        let ib = scaled(&b, b.value.mul(&PadicScalar::from_int(ring, index as i64)));
        let shift = sub_values(&scaled(&pe, d.act(&pe.value)), &pe);
        let r = sub_values(&sub_values(&bp, &ib), &shift);
        out.push(AuditLine::new(vol, format!("restriction[{k}, index {index}]"), r));
    }
    Ok(out)
}
