//! A = R × V with V·V = 0, matrices over V, the alternating trace and the
//! group S(A) with its St(R) coordinate replaced by a matrix over R.

use crate::error::{Result, SympError};
use padic_core::{Elt, Mat, Ring};
use serde::Serialize;

/// R × V for a free R-module V of the given rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareZeroAlgebra {
    pub ring: Ring,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AElt {
    pub r: Elt,
    pub v: Vec<Elt>,
}

impl SquareZeroAlgebra {
    pub fn new(ring: &Ring, rank: usize) -> Self {
        SquareZeroAlgebra { ring: ring.clone(), rank }
    }

    pub fn elt(&self, r: i64, v: &[i64]) -> Result<AElt> {
        if v.len() != self.rank {
            return Err(SympError::Shape(format!("vector of length {} in rank {}", v.len(), self.rank)));
        }
        Ok(AElt { r: self.ring.from_i64(r), v: v.iter().map(|&x| self.ring.from_i64(x)).collect() })
    }

    pub fn one(&self) -> AElt {
        AElt { r: self.ring.one(), v: vec![self.ring.zero(); self.rank] }
    }

    pub fn add(&self, a: &AElt, b: &AElt) -> AElt {
        let r = &self.ring;
        AElt { r: r.add(a.r, b.r), v: a.v.iter().zip(&b.v).map(|(&x, &y)| r.add(x, y)).collect() }
    }

    /// (r, v)(r', v') = (rr', rv' + r'v).
    pub fn mul(&self, a: &AElt, b: &AElt) -> AElt {
        let r = &self.ring;
        AElt {
            r: r.mul(a.r, b.r),
            v: a.v.iter().zip(&b.v).map(|(&x, &y)| r.add(r.mul(a.r, y), r.mul(b.r, x))).collect(),
        }
    }

    /// (r, v)₀ = r.
    pub fn project(&self, a: &AElt) -> Elt {
        a.r
    }
}

/// Σ_{k<l} a_kl e_k∧e_l, with e_k∧e_l = ½(e_k⊗e_l - e_l⊗e_k).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Wedge2 {
    rank: usize,
    coeffs: Vec<Elt>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WedgeJson {
    pub rank: usize,
    /// "k,l" → coefficient of e_k∧e_l, nonzero entries only.
    pub terms: Vec<(String, String)>,
}

fn pair_index(rank: usize, k: usize, l: usize) -> usize {
    k * rank - k * (k + 1) / 2 + (l - k - 1)
}

impl Wedge2 {
    pub fn zero(ring: &Ring, rank: usize) -> Self {
        Wedge2 { rank, coeffs: vec![ring.zero(); rank * rank.saturating_sub(1) / 2] }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Coefficient of e_k∧e_l, antisymmetric in (k, l).
    pub fn get(&self, ring: &Ring, k: usize, l: usize) -> Elt {
        match k.cmp(&l) {
            std::cmp::Ordering::Less => self.coeffs[pair_index(self.rank, k, l)],
            std::cmp::Ordering::Greater => ring.neg(self.coeffs[pair_index(self.rank, l, k)]),
            std::cmp::Ordering::Equal => ring.zero(),
        }
    }

    pub fn set(&mut self, k: usize, l: usize, x: Elt) {
        assert!(k < l);
        let i = pair_index(self.rank, k, l);
        self.coeffs[i] = x;
    }

    /// v∧w for vectors v, w.
    pub fn from_vectors(ring: &Ring, v: &[Elt], w: &[Elt]) -> Self {
        let n = v.len();
        let mut out = Wedge2::zero(ring, n);
        for k in 0..n {
            for l in k + 1..n {
                out.set(k, l, ring.sub(ring.mul(v[k], w[l]), ring.mul(v[l], w[k])));
            }
        }
        out
    }

    pub fn add(&self, ring: &Ring, o: &Self) -> Self {
        Wedge2 { rank: self.rank, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(&a, &b)| ring.add(a, b)).collect() }
    }

    pub fn neg(&self, ring: &Ring) -> Self {
        Wedge2 { rank: self.rank, coeffs: self.coeffs.iter().map(|&a| ring.neg(a)).collect() }
    }

    pub fn scale(&self, ring: &Ring, s: Elt) -> Self {
        Wedge2 { rank: self.rank, coeffs: self.coeffs.iter().map(|&a| ring.mul(a, s)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn to_json(&self, ring: &Ring) -> WedgeJson {
        let mut terms = Vec::new();
        for k in 0..self.rank {
            for l in k + 1..self.rank {
                let c = self.get(ring, k, l);
                if !c.is_zero() {
                    terms.push((format!("{k},{l}"), ring.format(c)));
                }
            }
        }
        WedgeJson { rank: self.rank, terms }
    }
}

/// X = Σ_k X_k ⊗ e_k, a d×d matrix with entries in V.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VMatrix {
    pub comps: Vec<Mat>,
}

impl VMatrix {
    pub fn new(comps: Vec<Mat>) -> Result<Self> {
        let d = comps.first().map(|m| m.rows).ok_or_else(|| SympError::Shape("rank 0".into()))?;
        if comps.iter().any(|m| m.rows != d || m.cols != d) {
            return Err(SympError::Shape("components must be square of one size".into()));
        }
        Ok(VMatrix { comps })
    }

    pub fn zero(rank: usize, d: usize) -> Self {
        VMatrix { comps: vec![Mat::zeros(d, d); rank] }
    }

    pub fn rank(&self) -> usize {
        self.comps.len()
    }

    pub fn dim(&self) -> usize {
        self.comps[0].rows
    }

    pub fn add(&self, ring: &Ring, o: &Self) -> Result<Self> {
        let comps = self.comps.iter().zip(&o.comps).map(|(a, b)| a.add(ring, b)).collect::<padic_core::Result<_>>()?;
        Ok(VMatrix { comps })
    }

    pub fn neg(&self, ring: &Ring) -> Self {
        VMatrix { comps: self.comps.iter().map(|a| a.scale(ring, ring.from_i64(-1))).collect() }
    }

    /// γ⁻¹Xγ.
    pub fn conj_by(&self, ring: &Ring, gamma: &Mat) -> Result<Self> {
        let gi = gamma.inv(ring)?;
        let comps = self.comps.iter().map(|a| gi.mul(ring, a)?.mul(ring, gamma)).collect::<padic_core::Result<_>>()?;
        Ok(VMatrix { comps })
    }

    pub fn trace(&self, ring: &Ring) -> Vec<Elt> {
        self.comps.iter().map(|a| a.trace(ring)).collect()
    }

    pub fn is_trace_zero(&self, ring: &Ring) -> bool {
        self.trace(ring).iter().all(|t| t.is_zero())
    }
}

fn half(ring: &Ring) -> Result<Elt> {
    Ok(ring.inv(ring.from_u64(2))?)
}

/// Tr_alt(X, Y) = ½(Tr(X⊗Y) - Tr(Y⊗X)) ∈ ∧²V.
pub fn tr_alt(ring: &Ring, x: &VMatrix, y: &VMatrix) -> Result<Wedge2> {
    if x.rank() != y.rank() || x.dim() != y.dim() {
        return Err(SympError::Shape("tr_alt needs matrices of one size over one V".into()));
    }
    let n = x.rank();
    let h = half(ring)?;
    // t_kl = coefficient of e_k⊗e_l
    let mut t = vec![vec![ring.zero(); n]; n];
    for k in 0..n {
        for l in 0..n {
            let a = x.comps[k].mul(ring, &y.comps[l])?.trace(ring);
            let b = y.comps[k].mul(ring, &x.comps[l])?.trace(ring);
            t[k][l] = ring.mul(h, ring.sub(a, b));
        }
    }
    let mut out = Wedge2::zero(ring, n);
    for k in 0..n {
        for l in k + 1..n {
            out.set(k, l, ring.sub(t[k][l], t[l][k]));
        }
    }
    Ok(out)
}

/// (γ, m, ω) with γ invertible over R and m trace zero over V. The law only
/// uses γ through conjugation, so any invertible γ is accepted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SElement {
    pub gamma: Mat,
    pub m: VMatrix,
    pub omega: Wedge2,
}

impl SElement {
    pub fn new(ring: &Ring, gamma: Mat, m: VMatrix, omega: Wedge2) -> Result<Self> {
        if !gamma.is_square() || gamma.rows != m.dim() || omega.rank() != m.rank() {
            return Err(SympError::Shape("S(A) coordinates do not match".into()));
        }
        if !gamma.is_invertible(ring) {
            return Err(SympError::Shape("γ is not invertible".into()));
        }
        if !m.is_trace_zero(ring) {
            return Err(SympError::NotTraceZero(0));
        }
        Ok(SElement { gamma, m, omega })
    }

    pub fn identity(ring: &Ring, d: usize, rank: usize) -> Self {
        SElement { gamma: Mat::identity(ring, d), m: VMatrix::zero(rank, d), omega: Wedge2::zero(ring, rank) }
    }

    /// Whether γ lies in SL_d(R).
    pub fn is_special(&self, ring: &Ring) -> bool {
        self.gamma.det(ring).map(|d| d == ring.one()).unwrap_or(false)
    }

    /// (γ⁻¹, -γmγ⁻¹, -ω).
    pub fn inverse(&self, ring: &Ring) -> Result<Self> {
        let gi = self.gamma.inv(ring)?;
        Ok(SElement { gamma: gi.clone(), m: self.m.conj_by(ring, &gi)?.neg(ring), omega: self.omega.neg(ring) })
    }
}

/// (γ,m,ω)·(γ',m',ω') = (γγ', γ'⁻¹mγ' + m', ω + ω' + Tr_alt(γ'⁻¹mγ', m')).
pub fn s_group_mul(ring: &Ring, a: &SElement, b: &SElement) -> Result<SElement> {
    if a.gamma.rows != b.gamma.rows || a.m.rank() != b.m.rank() {
        return Err(SympError::Shape("S(A) elements of different sizes".into()));
    }
    let mc = a.m.conj_by(ring, &b.gamma)?;
    let w = a.omega.add(ring, &b.omega).add(ring, &tr_alt(ring, &mc, &b.m)?);
    Ok(SElement { gamma: a.gamma.mul(ring, &b.gamma)?, m: mc.add(ring, &b.m)?, omega: w })
}
