//! Inhomogeneous bar chains [g_1|…|g_n] with coefficients in Z/l^k.

use crate::error::{ChainError, Result};
use crate::group::GroupCtx;
use crate::modulus::Modulus;
use serde::{Deserialize, Serialize};
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BarChain {
    degree: usize,
    modulus: Modulus,
    terms: BTreeMap<Vec<u32>, u64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChainTermJson {
    pub tuple: Vec<u32>,
    pub coeff: i64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChainJson {
    pub degree: usize,
    #[serde(rename = "mod")]
    pub modulus: String,
    pub terms: Vec<ChainTermJson>,
}

impl BarChain {
    pub fn zero(degree: usize, modulus: Modulus) -> Self {
        BarChain { degree, modulus, terms: BTreeMap::new() }
    }

    pub fn basis(tuple: &[u32], modulus: Modulus) -> Self {
        let mut c = Self::zero(tuple.len(), modulus);
        c.add_term(tuple.to_vec(), 1);
        c
    }

    pub fn from_terms(degree: usize, modulus: Modulus, terms: &[(&[u32], i64)]) -> Result<Self> {
        let mut c = Self::zero(degree, modulus);
        for (t, k) in terms {
            if t.len() != degree {
                return Err(ChainError::Mismatch);
            }
            c.add_term(t.to_vec(), modulus.from_i64(*k));
        }
        Ok(c)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], u64)> {
        self.terms.iter().map(|(t, &c)| (&t[..], c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, tuple: &[u32]) -> u64 {
        self.terms.get(tuple).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, tuple: Vec<u32>, c: u64) {
        debug_assert_eq!(tuple.len(), self.degree);
        let m = self.modulus;
        let c = c % m.value();
        if c == 0 {
            return;
        }
        match self.terms.entry(tuple) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = m.add(*o.get(), c);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn add_signed(&mut self, tuple: Vec<u32>, c: u64, negative: bool) {
        let c = if negative { self.modulus.neg(c) } else { c };
        self.add_term(tuple, c);
    }

    fn compatible(&self, o: &Self) -> Result<()> {
        if self.degree != o.degree || self.modulus != o.modulus {
            return Err(ChainError::Mismatch);
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.compatible(o)?;
        let mut out = self.clone();
        for (t, c) in o.terms() {
            out.add_term(t.to_vec(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(self.modulus.value() - 1)
    }

    pub fn scale(&self, k: u64) -> Self {
        let m = self.modulus;
        let terms = self.terms.iter().map(|(t, &c)| (t.clone(), m.mul(c, k % m.value()))).filter(|(_, c)| *c != 0).collect();
        BarChain { degree: self.degree, modulus: m, terms }
    }

    pub fn scale_i64(&self, k: i64) -> Self {
        self.scale(self.modulus.from_i64(k))
    }

    /// Reduction to Z/l^j for j ≤ k.
    pub fn reduce(&self, j: u32) -> Result<Self> {
        if j > self.modulus.k() {
            return Err(ChainError::BadModulus(format!("cannot lift from {} to exponent {j}", self.modulus)));
        }
        let m = Modulus::new(self.modulus.ell(), j)?;
        let mut out = Self::zero(self.degree, m);
        for (t, c) in self.terms() {
            out.add_term(t.to_vec(), c % m.value());
        }
        Ok(out)
    }

    /// Applies f to every entry of every tuple.
    pub fn map_elements(&self, mut f: impl FnMut(u32) -> u32) -> Self {
        let mut out = Self::zero(self.degree, self.modulus);
        for (t, c) in self.terms() {
            out.add_term(t.iter().map(|&g| f(g)).collect(), c);
        }
        out
    }

    pub fn try_map_elements(&self, mut f: impl FnMut(u32) -> Result<u32>) -> Result<Self> {
        let mut out = Self::zero(self.degree, self.modulus);
        for (t, c) in self.terms() {
            out.add_term(t.iter().map(|&g| f(g)).collect::<Result<_>>()?, c);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> ChainJson {
        ChainJson {
            degree: self.degree,
            modulus: self.modulus.to_string(),
            terms: self.terms().map(|(t, c)| ChainTermJson { tuple: t.to_vec(), coeff: self.modulus.signed(c) }).collect(),
        }
    }

    pub fn from_json(j: &ChainJson) -> Result<Self> {
        let m = Modulus::parse(&j.modulus)?;
        let mut c = Self::zero(j.degree, m);
        for t in &j.terms {
            if t.tuple.len() != j.degree {
                return Err(ChainError::Mismatch);
            }
            c.add_term(t.tuple.clone(), m.from_i64(t.coeff));
        }
        Ok(c)
    }

    pub fn format<G: GroupCtx + ?Sized>(&self, g: &G) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(t, c)| {
                let body = t.iter().map(|&x| g.label(x)).collect::<Vec<_>>().join("|");
                format!("{}[{}]", self.modulus.signed(c), body)
            })
            .collect();
        parts.join(" + ")
    }
}

/// ∂[g_1|…|g_n] = [g_2|…|g_n] + Σ_{i=1}^{n-1} (-1)^i […|g_i g_{i+1}|…] + (-1)^n [g_1|…|g_{n-1}].
pub fn boundary<G: GroupCtx + ?Sized>(c: &BarChain, g: &G) -> BarChain {
    let n = c.degree;
    let mut out = BarChain::zero(n.saturating_sub(1), c.modulus);
    if n == 0 {
        return out;
    }
    for (t, k) in c.terms() {
        out.add_term(t[1..].to_vec(), k);
        for i in 1..n {
            let mut f = Vec::with_capacity(n - 1);
            f.extend_from_slice(&t[..i - 1]);
            f.push(g.mul(t[i - 1], t[i]));
            f.extend_from_slice(&t[i + 1..]);
            out.add_signed(f, k, i % 2 == 1);
        }
        out.add_signed(t[..n - 1].to_vec(), k, n % 2 == 1);
    }
    out
}

/// Conjugation chain map [g_i] ↦ [h g_i h⁻¹].
pub fn inn<G: GroupCtx + ?Sized>(c: &BarChain, h: u32, g: &G) -> BarChain {
    let hi = g.inv(h);
    c.map_elements(|x| g.mul(g.mul(h, x), hi))
}

/// The homotopy F_h with inn_h - id = F_h∂ + ∂F_h:
/// F_h[g_1|…|g_n] = Σ_{r=0}^{n} (-1)^r [g_1|…|g_r|h⁻¹|h g_{r+1} h⁻¹|…|h g_n h⁻¹].
pub fn homotopy<G: GroupCtx + ?Sized>(c: &BarChain, h: u32, g: &G) -> BarChain {
    let n = c.degree;
    let hi = g.inv(h);
    let mut out = BarChain::zero(n + 1, c.modulus);
    for (t, k) in c.terms() {
        let conj: Vec<u32> = t.iter().map(|&x| g.mul(g.mul(h, x), hi)).collect();
        for r in 0..=n {
            let mut f = Vec::with_capacity(n + 1);
            f.extend_from_slice(&t[..r]);
            f.push(hi);
            f.extend_from_slice(&conj[r..]);
            out.add_signed(f, k, r % 2 == 1);
        }
    }
    out
}

/// All tuples in G^n in lexicographic order.
pub fn tuples(order: usize, n: usize) -> impl Iterator<Item = Vec<u32>> {
    let total = (order as u128).pow(n as u32);
    (0..total).map(move |mut x| {
        let mut t = vec![0u32; n];
        for slot in t.iter_mut().rev() {
            *slot = (x % order as u128) as u32;
            x /= order as u128;
        }
        t
    })
}
