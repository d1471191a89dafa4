//! The twisted-boundary chain A = ρ(d) − a⁻¹·F_h(φ(ρ(c))), its regulator
//! value, and the ambiguity coming from 3-cycles of Γ.

use crate::error::{Result, VolError};
use crate::setup::{ConjugationDatum, VolumeSetup};
use bar_chains::{boundary, coeff_in_ring, homotopy, BarChain, ChainError, ChainJson, MatrixGroup, SolverCache};
use padic_core::{Mat, PadicScalar, EXACT};
use regulator::{psi_transfer, RegulatorJson, RegulatorValue};
use serde::Serialize;
use std::cell::RefCell;
use std::collections::HashMap;

/// Largest ambiguity subgroup that is enumerated explicitly.
const MAX_AMBIGUITY: usize = 729;

/// Evaluates Ψ₃ on 3-chains of a matrix group, remembering every
/// homogeneous tuple across calls.
#[derive(Debug)]
pub struct ChainEvaluator {
    mg: MatrixGroup,
    cutoff: u32,
    memo: RefCell<HashMap<[u32; 3], RegulatorValue>>,
}

impl ChainEvaluator {
    pub fn new(mg: MatrixGroup, cutoff: u32) -> Self {
        ChainEvaluator { mg, cutoff, memo: RefCell::new(HashMap::new()) }
    }

    pub fn group(&self) -> &MatrixGroup {
        &self.mg
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn cached(&self) -> usize {
        self.memo.borrow().len()
    }

    fn tuple_value(&self, t: &[u32]) -> Result<RegulatorValue> {
        let ring = self.mg.ring();
        let g1 = self.mg.get(t[0]);
        let g12 = g1.mul(ring, &self.mg.get(t[1]))?;
        let g123 = g12.mul(ring, &self.mg.get(t[2]))?;
        let key = [t[0], self.mg.intern(&g12)?, self.mg.intern(&g123)?];
        if let Some(v) = self.memo.borrow().get(&key) {
            return Ok(v.clone());
        }
        let v = psi_transfer(ring, &[Mat::identity(ring, self.mg.dim()), g1, g12, g123], 3, self.cutoff)?;
        self.memo.borrow_mut().insert(key, v.clone());
        Ok(v)
    }

    /// Σ c·Ψ₃(1, g₁, g₁g₂, g₁g₂g₃).
    pub fn eval(&self, c: &BarChain) -> Result<RegulatorValue> {
        if c.degree() != 3 {
            return Err(VolError::Shape(format!("chain has degree {}, need 3", c.degree())));
        }
        let ring = self.mg.ring().clone();
        coeff_in_ring(&ring, c)?;
        let k_abs = c.modulus().k() as i64 * ring.e() as i64;
        let mut acc = PadicScalar::zero_to(&ring, EXACT);
        let mut cert = EXACT;
        for (t, coeff) in c.terms() {
            let v = self.tuple_value(t)?;
            let cs = PadicScalar::from_elt_to(&ring, ring.from_u64(coeff), k_abs);
            let term = cs.mul(&v.value.truncate(v.certified_abs));
            cert = cert.min(term.abs_prec());
            acc = acc.add(&term);
        }
        let cert = cert.min(acc.abs_prec());
        Ok(RegulatorValue { value: acc.truncate(cert), certified_abs: cert, cutoff: self.cutoff })
    }
}

/// Regulator values of 3-cycles whose classes generate H₃(Γ, Z/l^k); each
/// class in the generated subgroup is Σ i_j·cycle_j with 0 ≤ i_j < order_j.
#[derive(Clone, Debug)]
pub struct Ambiguity {
    pub cycles: Vec<BarChain>,
    pub orders: Vec<u64>,
    pub values: Vec<RegulatorValue>,
    /// |H₃(Γ, Z/l^k)|, when it fits.
    pub h3_order: Option<u64>,
    pub complete: bool,
}

impl Ambiguity {
    pub fn trivial() -> Self {
        Ambiguity { cycles: vec![], orders: vec![], values: vec![], h3_order: Some(1), complete: true }
    }

    /// Whether x ≡ Σ i_j·value_j within the combined certified error.
    pub fn absorbs(&self, x: &RegulatorValue) -> bool {
        let mut idx = vec![0u64; self.orders.len()];
        loop {
            let mut acc = x.value.clone();
            let mut cert = x.certified_abs;
            for (i, v) in idx.iter().zip(&self.values) {
                if *i > 0 {
                    acc = acc.sub(&v.value.mul(&PadicScalar::from_int(v.value.ring(), *i as i64)));
                    cert = cert.min(v.certified_abs);
                }
            }
            if acc.truncate(cert).is_zero() {
                return true;
            }
            let mut j = 0;
            loop {
                if j == idx.len() {
                    return false;
                }
                idx[j] += 1;
                if idx[j] < self.orders[j] {
                    break;
                }
                idx[j] = 0;
                j += 1;
            }
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|v| v.is_certified_zero())
    }
}

#[derive(Clone, Debug)]
pub struct VolumeResult {
    pub value: RegulatorValue,
    pub chosen_d: BarChain,
    pub ambiguity: Option<Ambiguity>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AmbiguityJson {
    pub orders: Vec<u64>,
    pub values: Vec<RegulatorJson>,
    pub h3_order: Option<u64>,
    pub complete: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VolumeJson {
    pub value: RegulatorJson,
    pub chosen_d: ChainJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ambiguity: Option<AmbiguityJson>,
}

impl VolumeResult {
    pub fn to_json(&self) -> VolumeJson {
        VolumeJson {
            value: self.value.to_json(),
            chosen_d: self.chosen_d.to_json(),
            ambiguity: self.ambiguity.as_ref().map(|a| AmbiguityJson {
                orders: a.orders.clone(),
                values: a.values.iter().map(|v| v.to_json()).collect(),
                h3_order: a.h3_order,
                complete: a.complete,
            }),
        }
    }
}

/// Twist defects of a setup, sharing boundary solvers and regulator values.
pub struct Volume<'a> {
    setup: &'a VolumeSetup,
    solvers: SolverCache<'a>,
    eval: ChainEvaluator,
    ambiguity: RefCell<Option<Ambiguity>>,
}

impl<'a> Volume<'a> {
    pub fn new(setup: &'a VolumeSetup, cutoff: u32) -> Self {
        let mg = MatrixGroup::new(setup.ring(), setup.rep.dim());
        Volume { setup, solvers: SolverCache::new(&setup.group), eval: ChainEvaluator::new(mg, cutoff), ambiguity: RefCell::new(None) }
    }

    pub fn setup(&self) -> &VolumeSetup {
        self.setup
    }

    pub fn evaluator(&self) -> &ChainEvaluator {
        &self.eval
    }

    pub fn solvers(&self) -> &SolverCache<'a> {
        &self.solvers
    }

    fn solve(&self, z: &BarChain) -> Result<BarChain> {
        if z.is_zero() {
            return Ok(BarChain::zero(z.degree() + 1, z.modulus()));
        }
        self.solvers.solve_boundary(z).map_err(|e| match e {
            ChainError::NoSolution => VolError::NotABoundary,
            other => other.into(),
        })
    }

    /// d with ∂d = a⁻¹σ̃(c) − c, by the solver's fixed pivot order.
    pub fn chosen_d(&self, datum: &ConjugationDatum, c: &BarChain) -> Result<BarChain> {
        let ai = datum.a_inv_mod(&c.modulus())?;
        let z = c.map_elements(|x| datum.sigma.apply(x)).scale(ai).sub(c)?;
        self.solve(&z)
    }

    /// The 3-chain ρ(d) − a⁻¹·F_h(φ(ρ(c))) in the matrix group.
    pub fn defect_chain(&self, datum: &ConjugationDatum, c: &BarChain, d: &BarChain) -> Result<BarChain> {
        let ring = self.setup.ring();
        let mg = self.eval.group();
        let rep = &self.setup.rep;
        let rd = rep.map_chain(d, mg)?;
        let rc = rep.map_chain(c, mg)?;
        let prc = if datum.phi.is_identity() {
            rc
        } else {
            rc.try_map_elements(|x| mg.intern(&datum.phi.apply_mat(ring, &mg.get(x))))?
        };
        let f = homotopy(&prc, mg.intern(&datum.h)?, mg);
        Ok(rd.sub(&f.scale(datum.a_inv_mod(&c.modulus())?))?)
    }

    /// The regulator value of the defect for `datum` and fundamental chain c.
    pub fn value_for(&self, datum: &ConjugationDatum, c: &BarChain) -> Result<(RegulatorValue, BarChain)> {
        let d = self.chosen_d(datum, c)?;
        let a = self.defect_chain(datum, c, &d)?;
        Ok((self.eval.eval(&a)?, d))
    }

    /// Ψ₃ of the image of a 3-chain of Γ.
    pub fn regulate(&self, z: &BarChain) -> Result<RegulatorValue> {
        let rz = self.setup.rep.map_chain(z, self.eval.group())?;
        self.eval.eval(&rz)
    }

    pub fn twist_defect(&self, which: usize, with_ambiguity: bool) -> Result<VolumeResult> {
        let datum = self.setup.data.get(which).ok_or_else(|| VolError::Shape(format!("no conjugation datum {which}")))?;
        let (value, chosen_d) = self.value_for(datum, &self.setup.cycle)?;
        let ambiguity = if with_ambiguity { Some(self.ambiguity()?) } else { None };
        Ok(VolumeResult { value, chosen_d, ambiguity })
    }

    /// Generators of H₃(Γ, Z/l^k) as explicit cycles z_t = t − d_t with
    /// ∂d_t = ∂t, taken in lexicographic order of t until their classes
    /// exhaust the group order reported by the Smith form.
    pub fn ambiguity(&self) -> Result<Ambiguity> {
        if let Some(a) = self.ambiguity.borrow().as_ref() {
            return Ok(a.clone());
        }
        let a = self.compute_ambiguity()?;
        *self.ambiguity.borrow_mut() = Some(a.clone());
        Ok(a)
    }

    fn is_boundary(&self, z: &BarChain) -> Result<bool> {
        if z.is_zero() {
            return Ok(true);
        }
        Ok(self.solvers.solver(3, z.modulus())?.solve(z)?.is_some())
    }

    fn in_span(&self, z: &BarChain, span: &[BarChain]) -> Result<bool> {
        for w in span {
            if self.is_boundary(&z.sub(w)?)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn compute_ambiguity(&self) -> Result<Ambiguity> {
        let g = &self.setup.group;
        let m = self.setup.modulus();
        let hom = self.solvers.homology(3, m)?;
        let mut h3: Option<u64> = Some(1);
        for &d in hom.divisors.iter().chain(&hom.tor_divisors) {
            h3 = h3.and_then(|x| x.checked_mul(d));
        }
        for _ in 0..hom.saturated {
            h3 = h3.and_then(|x| x.checked_mul(m.value()));
        }
        let target = h3.filter(|&x| x as usize <= MAX_AMBIGUITY);
        let mut span = vec![BarChain::zero(3, m)];
        let mut out = Ambiguity { cycles: vec![], orders: vec![], values: vec![], h3_order: h3, complete: false };
        let Some(target) = target else { return Ok(out) };
        let order = g.order();
        for t in bar_chains::tuples(order, 3) {
            if span.len() as u64 >= target {
                break;
            }
            let tc = BarChain::basis(&t, m);
            let dt = self.solve(&boundary(&tc, g))?;
            let z = tc.sub(&dt)?;
            if self.in_span(&z, &span)? {
                continue;
            }
            // relative order: least l^j with l^j·z in the current span
            let mut rel = 1u64;
            let mut zj = z.clone();
            loop {
                rel *= m.ell();
                zj = zj.scale(m.ell());
                if rel >= m.value() || self.in_span(&zj, &span)? {
                    break;
                }
            }
            let mut next = Vec::with_capacity(span.len() * rel as usize);
            for i in 0..rel {
                let zi = z.scale(i);
                for w in &span {
                    next.push(w.add(&zi)?);
                }
            }
            span = next;
            out.values.push(self.regulate(&z)?);
            out.cycles.push(z);
            out.orders.push(rel);
        }
        out.complete = span.len() as u64 == target;
        Ok(out)
    }

    /// Whether a residual vanishes within its certified error, modulo the
    /// ambiguity lattice when one has been computed.
    pub fn negligible(&self, r: &RegulatorValue) -> bool {
        if r.is_certified_zero() {
            return true;
        }
        match self.ambiguity.borrow().as_ref() {
            Some(a) => a.absorbs(r),
            None => false,
        }
    }
}

pub(crate) fn sub_values(a: &RegulatorValue, b: &RegulatorValue) -> RegulatorValue {
    let cert = a.certified_abs.min(b.certified_abs);
    let v = a.value.sub(&b.value).truncate(cert);
    RegulatorValue { value: v, certified_abs: cert, cutoff: a.cutoff.min(b.cutoff) }
}

pub(crate) fn scaled(x: &RegulatorValue, v: PadicScalar) -> RegulatorValue {
    let value = v.truncate(x.certified_abs);
    RegulatorValue { certified_abs: value.abs_prec().min(x.certified_abs), value, cutoff: x.cutoff }
}
