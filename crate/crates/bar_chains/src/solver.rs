//! Solving ∂d = z over Z/l^k for chains of a finite group.
//!
//! Columns of ∂_{n+1} are processed in lexicographic order. Those with a unit
//! entry off the current pivot rows join a reduced echelon basis with unit
//! pivots. The rest, whose residuals are divisible by l, go into a Howell
//! form on the remaining rows, which makes membership testing exact.

use crate::chain::{boundary, BarChain};
use crate::error::{ChainError, Result};
use crate::group::FiniteGroup;
use crate::modulus::Modulus;
use serde::Serialize;
use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

/// Largest number of (n+1)-tuples the solver will enumerate.
pub const MAX_COLUMNS: u128 = 10_000_000;

#[derive(Clone, Debug, Default)]
struct Combo {
    piv: Vec<u64>,
    extra: BTreeMap<u64, u64>,
}

impl Combo {
    fn axpy(&mut self, m: &Modulus, c: u64, o: &Combo) {
        if c == 0 {
            return;
        }
        if self.piv.len() < o.piv.len() {
            self.piv.resize(o.piv.len(), 0);
        }
        for (a, &b) in self.piv.iter_mut().zip(&o.piv) {
            if b != 0 {
                *a = m.add(*a, m.mul(c, b));
            }
        }
        for (&j, &b) in &o.extra {
            let s = self.extra.entry(j).or_insert(0);
            *s = m.add(*s, m.mul(c, b));
        }
        self.extra.retain(|_, v| *v != 0);
    }

    fn scale(&mut self, m: &Modulus, c: u64) {
        for a in self.piv.iter_mut() {
            *a = m.mul(*a, c);
        }
        for v in self.extra.values_mut() {
            *v = m.mul(*v, c);
        }
        self.extra.retain(|_, v| *v != 0);
    }
}

#[derive(Clone, Debug)]
struct PoolRow {
    val: u32,
    vec: Vec<u64>,
    combo: Combo,
}

#[derive(Debug)]
pub struct BoundarySolver {
    degree: usize,
    modulus: Modulus,
    order: usize,
    nrows: usize,
    pivot_cols: Vec<u64>,
    unit_vecs: Vec<Vec<u64>>,
    unit_combo: Vec<Combo>,
    pivot_of_row: Vec<Option<u32>>,
    qrows: Vec<usize>,
    pool: BTreeMap<usize, PoolRow>,
}

fn axpy(m: &Modulus, w: &mut [u64], c: u64, v: &[u64]) {
    if c == 0 {
        return;
    }
    for (a, &b) in w.iter_mut().zip(v) {
        if b != 0 {
            *a = m.add(*a, m.mul(c, b));
        }
    }
}

fn rank_of(t: &[u32], order: usize) -> usize {
    t.iter().fold(0usize, |acc, &x| acc * order + x as usize)
}

fn unrank(mut x: usize, order: usize, n: usize) -> Vec<u32> {
    let mut t = vec![0u32; n];
    for slot in t.iter_mut().rev() {
        *slot = (x % order) as u32;
        x /= order;
    }
    t
}

impl BoundarySolver {
    /// Solver for ∂_{n+1}: C_{n+1} → C_n.
    pub fn new(g: &FiniteGroup, degree: usize, modulus: Modulus) -> Result<Self> {
        let order = g.order();
        let ncols = (order as u128).pow(degree as u32 + 1);
        if ncols > MAX_COLUMNS {
            return Err(ChainError::TooLarge(ncols));
        }
        let ncols = ncols as usize;
        let nrows = order.pow(degree as u32);
        let m = modulus;
        let mut s = BoundarySolver {
            degree,
            modulus,
            order,
            nrows,
            pivot_cols: Vec::new(),
            unit_vecs: Vec::new(),
            unit_combo: Vec::new(),
            pivot_of_row: vec![None; nrows],
            qrows: Vec::new(),
            pool: BTreeMap::new(),
        };
        let mut residual = Vec::new();
        for j in 0..ncols {
            let col = s.column(g, j);
            let (w, combo) = s.reduce_column(&col);
            let Some(p) = (0..nrows).find(|&r| w[r] % m.ell() != 0) else {
                if w.iter().any(|&x| x != 0) {
                    residual.push(j);
                }
                continue;
            };
            let u = m.inv(w[p]).unwrap();
            let slot = s.unit_vecs.len();
            let mut v = w;
            for a in v.iter_mut() {
                *a = m.mul(*a, u);
            }
            let mut cb = combo;
            cb.piv.resize(slot + 1, 0);
            cb.piv[slot] = 1;
            cb.scale(&m, u);
            for k in 0..slot {
                let c = s.unit_vecs[k][p];
                if c != 0 {
                    let nc = m.neg(c);
                    axpy(&m, &mut s.unit_vecs[k], nc, &v);
                    let mut ck = std::mem::take(&mut s.unit_combo[k]);
                    ck.axpy(&m, nc, &cb);
                    s.unit_combo[k] = ck;
                }
            }
            s.unit_vecs.push(v);
            s.unit_combo.push(cb);
            s.pivot_cols.push(j as u64);
            s.pivot_of_row[p] = Some(slot as u32);
        }
        s.qrows = (0..nrows).filter(|&r| s.pivot_of_row[r].is_none()).collect();
        for j in residual {
            let col = s.column(g, j);
            let (w, mut combo) = s.reduce_column(&col);
            combo.extra.insert(j as u64, 1);
            let wq: Vec<u64> = s.qrows.iter().map(|&r| w[r]).collect();
            s.insert_pool(wq, combo);
        }
        Ok(s)
    }

    /// Boundary of the j-th basis tuple as (row, coefficient), merged.
    fn column(&self, g: &FiniteGroup, j: usize) -> Vec<(usize, u64)> {
        let t = unrank(j, self.order, self.degree + 1);
        let b = boundary(&BarChain::basis(&t, self.modulus), g);
        b.terms().map(|(f, c)| (rank_of(f, self.order), c)).collect()
    }

    /// Subtracts unit-pivot vectors; returns the residual and its combination
    /// of pivot columns (with the sign of the subtraction).
    fn reduce_column(&self, col: &[(usize, u64)]) -> (Vec<u64>, Combo) {
        let m = self.modulus;
        let mut w = vec![0u64; self.nrows];
        for &(r, c) in col {
            w[r] = m.add(w[r], c);
        }
        let mut combo = Combo { piv: vec![0; self.unit_vecs.len()], extra: BTreeMap::new() };
        for &(r, _) in col {
            if let Some(i) = self.pivot_of_row[r] {
                let c = w[r];
                if c != 0 {
                    let nc = m.neg(c);
                    axpy(&m, &mut w, nc, &self.unit_vecs[i as usize]);
                    combo.axpy(&m, nc, &self.unit_combo[i as usize]);
                }
            }
        }
        (w, combo)
    }

    fn insert_pool(&mut self, w: Vec<u64>, cb: Combo) {
        let m = self.modulus;
        let mut stack = vec![(w, cb)];
        while let Some((mut w, mut cb)) = stack.pop() {
            loop {
                let Some(p) = w.iter().position(|&x| x != 0) else { break };
                let (vw, uw) = m.split(w[p]).unwrap();
                match self.pool.get(&p) {
                    Some(row) if vw >= row.val => {
                        let f = m.neg(m.mul(m.pow_ell(vw - row.val), uw));
                        axpy(&m, &mut w, f, &row.vec);
                        cb.axpy(&m, f, &row.combo);
                    }
                    existing => {
                        let old = existing.is_some();
                        let ui = m.inv(uw).unwrap();
                        for a in w.iter_mut() {
                            *a = m.mul(*a, ui);
                        }
                        cb.scale(&m, ui);
                        if vw > 0 {
                            let a = m.pow_ell(m.k() - vw);
                            let ann: Vec<u64> = w.iter().map(|&x| m.mul(x, a)).collect();
                            let mut acb = cb.clone();
                            acb.scale(&m, a);
                            stack.push((ann, acb));
                        }
                        let new = PoolRow { val: vw, vec: w, combo: cb };
                        match (old, self.pool.insert(p, new)) {
                            (true, Some(prev)) => {
                                w = prev.vec;
                                cb = prev.combo;
                            }
                            _ => break,
                        }
                    }
                }
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    /// Number of unit pivots.
    pub fn unit_rank(&self) -> usize {
        self.unit_vecs.len()
    }

    /// Some d with ∂d = z when z lies in the image.
    pub fn solve(&self, z: &BarChain) -> Result<Option<BarChain>> {
        if z.degree() != self.degree || z.modulus() != self.modulus {
            return Err(ChainError::Mismatch);
        }
        let m = self.modulus;
        let mut w = vec![0u64; self.nrows];
        for (t, c) in z.terms() {
            if t.iter().any(|&x| x as usize >= self.order) {
                return Err(ChainError::BadElement(*t.iter().max().unwrap()));
            }
            let r = rank_of(t, self.order);
            w[r] = m.add(w[r], c);
        }
        let mut x = Combo { piv: vec![0; self.unit_vecs.len()], extra: BTreeMap::new() };
        for r in 0..self.nrows {
            if let Some(i) = self.pivot_of_row[r] {
                let c = w[r];
                if c != 0 {
                    axpy(&m, &mut w, m.neg(c), &self.unit_vecs[i as usize]);
                    x.axpy(&m, c, &self.unit_combo[i as usize]);
                }
            }
        }
        let mut wq: Vec<u64> = self.qrows.iter().map(|&r| w[r]).collect();
        while let Some(p) = wq.iter().position(|&v| v != 0) {
            let (vw, uw) = m.split(wq[p]).unwrap();
            match self.pool.get(&p) {
                Some(row) if vw >= row.val => {
                    let f = m.mul(m.pow_ell(vw - row.val), uw);
                    axpy(&m, &mut wq, m.neg(f), &row.vec);
                    x.axpy(&m, f, &row.combo);
                }
                _ => return Ok(None),
            }
        }
        let mut d = BarChain::zero(self.degree + 1, m);
        for (i, &c) in x.piv.iter().enumerate() {
            if c != 0 {
                d.add_term(unrank(self.pivot_cols[i] as usize, self.order, self.degree + 1), c);
            }
        }
        for (&j, &c) in &x.extra {
            d.add_term(unrank(j as usize, self.order, self.degree + 1), c);
        }
        Ok(Some(d))
    }

    /// Valuations of the nonzero Smith invariants of ∂_{n+1} mod l^k.
    pub fn smith_valuations(&self) -> Vec<u32> {
        let mut out = vec![0; self.unit_vecs.len()];
        let rows: Vec<Vec<u64>> = self.pool.values().map(|r| r.vec.clone()).collect();
        out.extend(smith_valuations(&self.modulus, rows));
        out
    }
}

/// Smith invariants of a dense matrix over Z/l^k, as valuations < k.
pub fn smith_valuations(m: &Modulus, mut a: Vec<Vec<u64>>) -> Vec<u32> {
    let nr = a.len();
    let nc = a.first().map_or(0, |r| r.len());
    let mut out = Vec::new();
    for t in 0..nr.min(nc) {
        let mut best: Option<(u32, usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, &x) in row.iter().enumerate().skip(t) {
                if x != 0 {
                    let v = m.valuation(x);
                    if best.is_none_or(|b| v < b.0) {
                        best = Some((v, i, j));
                    }
                }
            }
        }
        let Some((v, i, j)) = best else { break };
        a.swap(t, i);
        for row in a.iter_mut() {
            row.swap(t, j);
        }
        let u = m.inv(a[t][t] / m.ell().pow(v)).unwrap();
        let pivot: Vec<u64> = a[t].iter().map(|&x| m.mul(x, u)).collect();
        for (i, row) in a.iter_mut().enumerate() {
            if i != t && row[t] != 0 {
                let (vi, ui) = m.split(row[t]).unwrap();
                let f = m.neg(m.mul(m.pow_ell(vi - v), ui));
                axpy(m, row, f, &pivot);
            }
        }
        a[t] = vec![0; nc];
        a[t][t] = m.pow_ell(v);
        out.push(v);
    }
    out
}

/// Solvers keyed by (degree, modulus) for one group.
#[derive(Debug)]
pub struct SolverCache<'a> {
    group: &'a FiniteGroup,
    solvers: RefCell<HashMap<(usize, Modulus), Rc<BoundarySolver>>>,
}

impl<'a> SolverCache<'a> {
    pub fn new(group: &'a FiniteGroup) -> Self {
        SolverCache { group, solvers: RefCell::new(HashMap::new()) }
    }

    pub fn group(&self) -> &FiniteGroup {
        self.group
    }

    pub fn solver(&self, degree: usize, modulus: Modulus) -> Result<Rc<BoundarySolver>> {
        if let Some(s) = self.solvers.borrow().get(&(degree, modulus)) {
            return Ok(s.clone());
        }
        let s = Rc::new(BoundarySolver::new(self.group, degree, modulus)?);
        self.solvers.borrow_mut().insert((degree, modulus), s.clone());
        Ok(s)
    }

    /// d with ∂d = z, for a cycle z.
    pub fn solve_boundary(&self, z: &BarChain) -> Result<BarChain> {
        if z.degree() > 0 && !boundary(z, self.group).is_zero() {
            return Err(ChainError::NotACycle);
        }
        let d = self.solver(z.degree(), z.modulus())?.solve(z)?.ok_or(ChainError::NoSolution)?;
        debug_assert_eq!(&boundary(&d, self.group), z);
        Ok(d)
    }

    pub fn homology(&self, degree: usize, modulus: Modulus) -> Result<Homology> {
        let k = modulus.k();
        let proper = |vs: &[u32]| vs.iter().filter(|&&v| v > 0 && v < k).map(|&v| modulus.ell().pow(v)).collect::<Vec<_>>();
        let up = self.solver(degree, modulus)?.smith_valuations();
        let down = if degree == 0 { Vec::new() } else { self.solver(degree - 1, modulus)?.smith_valuations() };
        let cn = self.group.order().pow(degree as u32);
        Ok(Homology { divisors: proper(&up), tor_divisors: proper(&down), saturated: cn - down.len() - up.len() })
    }
}

/// H_n of the bar complex over Z/l^k is
/// ⊕_{d ∈ divisors} Z/d ⊕ ⊕_{d ∈ tor_divisors} Z/d ⊕ (Z/l^k)^saturated.
/// `divisors` come from ∂_{n+1} and describe H_n(G, Z) ⊗ Z/l^k; `tor_divisors`
/// come from ∂_n and describe Tor(H_{n-1}(G, Z), Z/l^k).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Homology {
    pub divisors: Vec<u64>,
    pub tor_divisors: Vec<u64>,
    pub saturated: usize,
}

pub fn solve_boundary(g: &FiniteGroup, z: &BarChain) -> Result<BarChain> {
    SolverCache::new(g).solve_boundary(z)
}

pub fn homology_divisors(g: &FiniteGroup, degree: usize, modulus: Modulus) -> Result<Homology> {
    SolverCache::new(g).homology(degree, modulus)
}
