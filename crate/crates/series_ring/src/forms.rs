//! Differential forms Σ f_I dx_I on the polydisk. Components are keyed by the
//! bitmask of the increasing index set I.

use crate::error::{Result, SeriesError};
use crate::field::VectorField;
use crate::series::TruncSeries;
use padic_core::{PadicScalar, Ring, EXACT};
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffForm {
    ring: Ring,
    m: usize,
    degree: usize,
    comps: BTreeMap<u32, TruncSeries>,
}

/// Increasing index sets of size k in {0..m}, as bitmasks.
pub fn masks(m: usize, k: usize) -> Vec<u32> {
    (0u32..(1u32 << m)).filter(|x| x.count_ones() as usize == k).collect()
}

pub fn mask_indices(mask: u32) -> Vec<usize> {
    (0..32).filter(|&i| mask >> i & 1 == 1).collect()
}

/// "d12" for dx_1∧dx_2 (1-based labels).
pub fn label(mask: u32) -> String {
    let mut s = String::from("d");
    for i in mask_indices(mask) {
        s.push_str(&(i + 1).to_string());
    }
    s
}

pub fn parse_label(s: &str, m: usize) -> Result<u32> {
    let bad = || SeriesError::Parse(format!("bad component label {s}"));
    let digits = s.strip_prefix('d').ok_or_else(bad)?;
    let mut mask = 0u32;
    for c in digits.chars() {
        let i = c.to_digit(10).ok_or_else(bad)? as usize;
        if i == 0 || i > m || mask >> (i - 1) & 1 == 1 {
            return Err(bad());
        }
        mask |= 1 << (i - 1);
    }
    Ok(mask)
}

/// Sign of sorting the concatenation I, J (0 if they overlap).
fn merge_sign(a: u32, b: u32) -> i64 {
    if a & b != 0 {
        return 0;
    }
    let mut inv = 0;
    for j in mask_indices(b) {
        inv += (a >> (j + 1)).count_ones();
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

fn signed(f: &TruncSeries, s: i64) -> TruncSeries {
    if s < 0 {
        f.neg()
    } else {
        f.clone()
    }
}

impl DiffForm {
    pub fn zero(ring: &Ring, m: usize, n: i64, degree: usize) -> Self {
        let comps = masks(m, degree).into_iter().map(|k| (k, TruncSeries::zero(ring, m, n))).collect();
        DiffForm { ring: ring.clone(), m, degree, comps }
    }

    pub fn function(f: TruncSeries) -> Self {
        let mut comps = BTreeMap::new();
        let (ring, m) = (f.ring().clone(), f.m());
        comps.insert(0, f);
        DiffForm { ring, m, degree: 0, comps }
    }

    /// Σ f_j dx_j.
    pub fn one_form(comps: Vec<TruncSeries>) -> Result<Self> {
        let m = comps.len();
        let first = comps.first().ok_or_else(|| SeriesError::Shape("empty 1-form".into()))?.clone();
        let mut map = BTreeMap::new();
        for (j, c) in comps.into_iter().enumerate() {
            first.same_space(&c)?;
            if c.m() != m {
                return Err(SeriesError::Shape("1-form needs one component per variable".into()));
            }
            map.insert(1u32 << j, c);
        }
        Ok(DiffForm { ring: first.ring().clone(), m, degree: 1, comps: map })
    }

    /// Build from (index list, coefficient) pairs; index lists may be unsorted
    /// and are normalized with the matching sign. Absent components are zero.
    pub fn from_components(ring: &Ring, m: usize, degree: usize, parts: Vec<(Vec<usize>, TruncSeries)>) -> Result<Self> {
        let n = parts.iter().map(|(_, f)| f.n()).min().unwrap_or(EXACT);
        let mut out = Self::zero(ring, m, n, degree);
        for (idx, f) in parts {
            if idx.len() != degree || idx.iter().any(|&i| i >= m) || f.m() != m || f.ring() != ring {
                return Err(SeriesError::Shape(format!("component {idx:?} does not fit a {degree}-form in {m} variables")));
            }
            let (mask, s) = sort_sign(&idx);
            if s == 0 {
                continue;
            }
            let c = out.comps.get_mut(&mask).unwrap();
            *c = c.add(&signed(&f, s))?;
        }
        Ok(out)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Effective truncation order (minimum over components).
    pub fn n(&self) -> i64 {
        self.comps.values().map(|c| c.n()).min().unwrap_or(EXACT)
    }

    pub fn components(&self) -> impl Iterator<Item = (u32, &TruncSeries)> {
        self.comps.iter().map(|(k, v)| (*k, v))
    }

    /// Coefficient of dx_{i_1}∧…∧dx_{i_k} for any ordering of the indices.
    pub fn comp(&self, idx: &[usize]) -> TruncSeries {
        let (mask, s) = sort_sign(idx);
        match self.comps.get(&mask) {
            Some(f) if s != 0 => signed(f, s),
            _ => TruncSeries::zero(&self.ring, self.m, self.n()),
        }
    }

    fn zip(&self, o: &Self, op: impl Fn(&TruncSeries, &TruncSeries) -> Result<TruncSeries>) -> Result<Self> {
        if self.m != o.m || self.degree != o.degree || self.ring != o.ring {
            return Err(SeriesError::VarMismatch);
        }
        let mut comps = BTreeMap::new();
        for (k, a) in &self.comps {
            comps.insert(*k, op(a, &o.comps[k])?);
        }
        Ok(DiffForm { ring: self.ring.clone(), m: self.m, degree: self.degree, comps })
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.zip(o, |a, b| a.add(b))
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.zip(o, |a, b| a.sub(b))
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg())
    }

    pub fn scale(&self, c: &PadicScalar) -> Self {
        self.map(|f| f.scale(c))
    }

    pub fn truncate(&self, n: i64) -> Self {
        self.map(|f| f.truncate(n))
    }

    pub fn mul_fn(&self, g: &TruncSeries) -> Result<Self> {
        let mut comps = BTreeMap::new();
        for (k, f) in &self.comps {
            comps.insert(*k, f.mul(g)?);
        }
        Ok(DiffForm { ring: self.ring.clone(), m: self.m, degree: self.degree, comps })
    }

    fn map(&self, f: impl Fn(&TruncSeries) -> TruncSeries) -> Self {
        let comps = self.comps.iter().map(|(k, c)| (*k, f(c))).collect();
        DiffForm { ring: self.ring.clone(), m: self.m, degree: self.degree, comps }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.values().all(|c| c.is_zero())
    }

    pub fn agrees_with(&self, o: &Self) -> bool {
        self.sub(o).map(|d| d.is_zero()).unwrap_or(false)
    }
}

fn sort_sign(idx: &[usize]) -> (u32, i64) {
    let mut v = idx.to_vec();
    let mut s = 1;
    for i in 0..v.len() {
        for j in 0..v.len().saturating_sub(1 + i) {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                s = -s;
            } else if v[j] == v[j + 1] {
                return (0, 0);
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return (0, 0);
    }
    (v.iter().fold(0u32, |m, &i| m | 1 << i), s)
}

/// df = Σ ∂f/∂x_j dx_j.
pub fn exterior_d(f: &TruncSeries) -> DiffForm {
    DiffForm::one_form((0..f.m()).map(|j| f.derivative(j)).collect()).expect("well-shaped")
}

/// d on functions and 1-forms.
pub fn exterior_d_form(w: &DiffForm) -> Result<DiffForm> {
    if w.degree >= 2 {
        return Err(SeriesError::DegreeTooHigh(w.degree));
    }
    Ok(exterior_d_any(w))
}

/// d in every degree; forms of degree ≥ 2 only need it for closedness checks.
pub fn exterior_d_any(w: &DiffForm) -> DiffForm {
    let mut out = DiffForm::zero(&w.ring, w.m, EXACT, w.degree + 1);
    for (mask, f) in &w.comps {
        for j in 0..w.m {
            let s = merge_sign(1 << j, *mask);
            if s == 0 {
                continue;
            }
            let t = out.comps.get_mut(&(mask | 1 << j)).unwrap();
            *t = t.add(&signed(&f.derivative(j), s)).expect("same space");
        }
    }
    let n = w.n() - 1;
    out.truncate(n)
}

pub fn wedge(a: &DiffForm, b: &DiffForm) -> Result<DiffForm> {
    if a.m != b.m || a.ring != b.ring {
        return Err(SeriesError::VarMismatch);
    }
    let deg = a.degree + b.degree;
    let mut out = DiffForm::zero(&a.ring, a.m, EXACT, deg);
    for (ka, fa) in &a.comps {
        for (kb, fb) in &b.comps {
            let s = merge_sign(*ka, *kb);
            if s == 0 {
                continue;
            }
            let t = out.comps.get_mut(&(ka | kb)).unwrap();
            *t = t.add(&signed(&fa.mul(fb)?, s))?;
        }
    }
    Ok(out)
}

/// Interior product i_X ω.
pub fn contract(x: &VectorField, w: &DiffForm) -> Result<DiffForm> {
    if w.degree == 0 {
        return Err(SeriesError::Shape("cannot contract a function".into()));
    }
    if x.m() != w.m || x.ring() != &w.ring {
        return Err(SeriesError::VarMismatch);
    }
    let mut out = DiffForm::zero(&w.ring, w.m, EXACT, w.degree - 1);
    for (mask, f) in &w.comps {
        for (r, i) in mask_indices(*mask).into_iter().enumerate() {
            let term = x.comp(i).mul(f)?;
            let t = out.comps.get_mut(&(mask & !(1 << i))).unwrap();
            *t = if r % 2 == 0 { t.add(&term)? } else { t.sub(&term)? };
        }
    }
    Ok(out)
}

/// f^{-1} df.
pub fn dlog(f: &TruncSeries) -> Result<DiffForm> {
    let fi = f.inv()?;
    exterior_d(f).mul_fn(&fi)
}

/// F with dF = μ and F(0) = 0 for a closed 1-form μ, integrating one variable
/// at a time along the path that fills in coordinates from the last one.
pub fn antiderivative(mu: &DiffForm) -> Result<TruncSeries> {
    if mu.degree != 1 {
        return Err(SeriesError::Shape("antiderivative needs a 1-form".into()));
    }
    let m = mu.m;
    let mut n_res = EXACT;
    for i in 0..m {
        for j in i + 1..m {
            let r = mu.comp(&[j]).derivative(i).sub(&mu.comp(&[i]).derivative(j))?;
            if !r.is_zero() {
                return Err(SeriesError::NotClosed { i, j, residual: Box::new(r) });
            }
            n_res = n_res.min(r.n());
        }
    }
    let mut acc = TruncSeries::zero(&mu.ring, m, EXACT);
    for j in 0..m {
        let before: Vec<usize> = (0..j).collect();
        let fj = mu.comp(&[j]).set_zero(&before);
        acc = acc.add(&fj.integrate(j)?)?;
    }
    if n_res < EXACT {
        let r = &mu.ring;
        let q = padic_core::linear_minus_valuation(r.ell(), r.e() as i64, 1, (n_res + 1).max(1) as u64);
        acc = acc.truncate(q + 1);
    }
    Ok(acc)
}

/// ψ^*ω for ψ given by component series (all in the same m' variables).
pub fn pullback(w: &DiffForm, psi: &[TruncSeries]) -> Result<DiffForm> {
    if psi.len() != w.m {
        return Err(SeriesError::Shape("pullback needs one component per variable".into()));
    }
    let first = psi.first().ok_or_else(|| SeriesError::Shape("empty map".into()))?;
    let (ring, m2) = (first.ring().clone(), first.m());
    let dpsi: Vec<DiffForm> = psi.iter().map(exterior_d).collect();
    let mut out = DiffForm::zero(&ring, m2, EXACT, w.degree);
    for (mask, f) in &w.comps {
        let mut term = DiffForm::function(f.substitute(psi)?);
        for i in mask_indices(*mask) {
            term = wedge(&term, &dpsi[i])?;
        }
        out = out.add(&term)?;
    }
    Ok(out)
}
