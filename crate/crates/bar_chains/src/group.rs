//! Groups as index sets with a multiplication, identity at index 0.

use crate::error::{ChainError, Result};
use padic_core::{Mat, Ring};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::cell::RefCell;
use std::collections::{HashMap, VecDeque};

pub trait GroupCtx {
    fn mul(&self, a: u32, b: u32) -> u32;
    fn inv(&self, a: u32) -> u32;
    fn identity(&self) -> u32 {
        0
    }
    fn label(&self, a: u32) -> String {
        a.to_string()
    }
    fn conj(&self, h: u32, g: u32) -> u32 {
        self.mul(self.mul(h, g), self.inv(h))
    }
}

/// A group given by its multiplication table.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
    labels: Vec<String>,
}

/// Wire form: either a table or a named family.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Table { #[serde(alias = "mul")] table: Vec<Vec<u32>>, #[serde(default)] labels: Vec<String> },
    Abelian { abelian: Vec<u32> },
    Symmetric { symmetric: u32 },
}

const EXHAUSTIVE_ASSOC: usize = 64;

impl FiniteGroup {
    /// Validates identity at 0, the Latin square property and associativity
    /// (exhaustively up to order 64, on 10^5 seeded random triples above).
    pub fn from_table(table: Vec<Vec<u32>>, labels: Vec<String>) -> Result<Self> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n) {
            return Err(ChainError::InvalidGroup("table must be square and non-empty".into()));
        }
        let flat: Vec<u32> = table.into_iter().flatten().collect();
        if flat.iter().any(|&x| x as usize >= n) {
            return Err(ChainError::InvalidGroup("entry out of range".into()));
        }
        for a in 0..n {
            if flat[a] as usize != a || flat[a * n] as usize != a {
                return Err(ChainError::InvalidGroup("index 0 is not the identity".into()));
            }
        }
        for a in 0..n {
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            for b in 0..n {
                row[flat[a * n + b] as usize] = true;
                col[flat[b * n + a] as usize] = true;
            }
            if row.iter().chain(col.iter()).any(|x| !x) {
                return Err(ChainError::InvalidGroup("table is not a Latin square".into()));
            }
        }
        let at = |a: usize, b: usize| flat[a * n + b] as usize;
        let assoc = |a: usize, b: usize, c: usize| at(at(a, b), c) == at(a, at(b, c));
        if n <= EXHAUSTIVE_ASSOC {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !assoc(a, b, c) {
                            return Err(ChainError::InvalidGroup(format!("not associative at ({a},{b},{c})")));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0);
            for _ in 0..100_000 {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if !assoc(a, b, c) {
                    return Err(ChainError::InvalidGroup(format!("not associative at ({a},{b},{c})")));
                }
            }
        }
        let inverse = (0..n).map(|a| (0..n).find(|&b| at(a, b) == 0).unwrap() as u32).collect();
        let labels = if labels.len() == n { labels } else { (0..n).map(|i| format!("g{i}")).collect() };
        Ok(FiniteGroup { order: n, table: flat, inverse, labels })
    }

    pub fn from_spec(spec: &GroupSpec) -> Result<Self> {
        match spec {
            GroupSpec::Table { table, labels } => Self::from_table(table.clone(), labels.clone()),
            GroupSpec::Abelian { abelian } => Self::abelian(abelian),
            GroupSpec::Symmetric { symmetric } => Self::symmetric(*symmetric as usize),
        }
    }

    /// Z/n_1 × … × Z/n_r, element index Σ a_i·(n_1⋯n_{i-1}).
    pub fn abelian(ns: &[u32]) -> Result<Self> {
        if ns.is_empty() || ns.iter().any(|&x| x == 0) {
            return Err(ChainError::InvalidGroup("cyclic factors must be positive".into()));
        }
        let n: usize = ns.iter().map(|&x| x as usize).product();
        if n > 1 << 16 {
            return Err(ChainError::InvalidGroup("order too large for a table".into()));
        }
        let digits = |mut x: usize| {
            ns.iter()
                .map(|&m| {
                    let d = x % m as usize;
                    x /= m as usize;
                    d
                })
                .collect::<Vec<_>>()
        };
        let index = |d: &[usize]| {
            let mut x = 0;
            for (i, &m) in ns.iter().enumerate().rev() {
                x = x * m as usize + d[i];
            }
            x as u32
        };
        let mut table = vec![vec![0u32; n]; n];
        for (a, row) in table.iter_mut().enumerate() {
            let da = digits(a);
            for (b, slot) in row.iter_mut().enumerate() {
                let s: Vec<usize> = digits(b).iter().zip(&da).zip(ns).map(|((x, y), &m)| (x + y) % m as usize).collect();
                *slot = index(&s);
            }
        }
        let names = ['a', 'b', 'c', 'd', 'e', 'f'];
        let labels = (0..n)
            .map(|x| {
                let d = digits(x);
                let parts: Vec<String> = d
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(i, &k)| {
                        let nm = names.get(i).map(|c| c.to_string()).unwrap_or(format!("x{i}"));
                        if k == 1 {
                            nm
                        } else {
                            format!("{nm}^{k}")
                        }
                    })
                    .collect();
                if parts.is_empty() {
                    "1".into()
                } else {
                    parts.join("")
                }
            })
            .collect();
        Self::from_table(table, labels)
    }

    /// The i-th standard generator of an abelian group built by `abelian`.
    pub fn abelian_generator(ns: &[u32], i: usize) -> u32 {
        ns[..i].iter().product()
    }

    /// S_n on {0,…,n-1}, permutations in lexicographic order, (στ)(x) = σ(τ(x)).
    pub fn symmetric(n: usize) -> Result<Self> {
        if n == 0 || n > 6 {
            return Err(ChainError::InvalidGroup("symmetric groups supported for 1 ≤ n ≤ 6".into()));
        }
        let mut perms: Vec<Vec<usize>> = Vec::new();
        let mut p: Vec<usize> = (0..n).collect();
        loop {
            perms.push(p.clone());
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else { break };
            let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).unwrap();
            p.swap(i, j);
            p[i + 1..].reverse();
        }
        let idx: HashMap<Vec<usize>, u32> = perms.iter().enumerate().map(|(i, q)| (q.clone(), i as u32)).collect();
        let table = perms
            .iter()
            .map(|s| perms.iter().map(|t| idx[&t.iter().map(|&x| s[x]).collect::<Vec<_>>()]).collect())
            .collect();
        let labels = perms.iter().map(|q| format!("[{}]", q.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(""))).collect();
        Self::from_table(table, labels)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.order as u32
    }

    pub fn find(&self, label: &str) -> Option<u32> {
        self.labels.iter().position(|l| l == label).map(|i| i as u32)
    }

    pub fn check(&self, a: u32) -> Result<u32> {
        if (a as usize) < self.order {
            Ok(a)
        } else {
            Err(ChainError::BadElement(a))
        }
    }

    pub fn pow(&self, a: u32, k: u64) -> u32 {
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }
}

impl GroupCtx for FiniteGroup {
    #[inline]
    fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.order + b as usize]
    }
    #[inline]
    fn inv(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }
    fn label(&self, a: u32) -> String {
        self.labels[a as usize].clone()
    }
}

/// An automorphism of a finite group as a permutation of indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAutomorphism {
    perm: Vec<u32>,
}

impl GroupAutomorphism {
    pub fn identity(g: &FiniteGroup) -> Self {
        GroupAutomorphism { perm: g.elements().collect() }
    }

    pub fn from_perm(g: &FiniteGroup, perm: Vec<u32>) -> Result<Self> {
        let a = GroupAutomorphism { perm };
        a.validate(g)?;
        Ok(a)
    }

    /// x ↦ d x d⁻¹.
    pub fn inner(g: &FiniteGroup, d: u32) -> Self {
        GroupAutomorphism { perm: g.elements().map(|x| g.conj(d, x)).collect() }
    }

    /// Extends images of generators multiplicatively.
    pub fn from_generator_images(g: &FiniteGroup, gens: &[u32], images: &[u32]) -> Result<Self> {
        if gens.len() != images.len() {
            return Err(ChainError::Mismatch);
        }
        let n = g.order();
        let mut perm: Vec<Option<u32>> = vec![None; n];
        perm[0] = Some(0);
        let mut queue = VecDeque::from([0u32]);
        while let Some(x) = queue.pop_front() {
            let fx = perm[x as usize].unwrap();
            for (&s, &t) in gens.iter().zip(images) {
                let y = g.mul(x, g.check(s)?);
                let fy = g.mul(fx, g.check(t)?);
                match perm[y as usize] {
                    None => {
                        perm[y as usize] = Some(fy);
                        queue.push_back(y);
                    }
                    Some(z) if z != fy => return Err(ChainError::NotAHomomorphism(x, s)),
                    _ => {}
                }
            }
        }
        if perm.iter().any(|p| p.is_none()) {
            return Err(ChainError::InvalidGroup("generators do not generate".into()));
        }
        Self::from_perm(g, perm.into_iter().map(|p| p.unwrap()).collect())
    }

    fn validate(&self, g: &FiniteGroup) -> Result<()> {
        let n = g.order();
        if self.perm.len() != n {
            return Err(ChainError::Mismatch);
        }
        let mut seen = vec![false; n];
        for &p in &self.perm {
            g.check(p)?;
            seen[p as usize] = true;
        }
        if seen.iter().any(|s| !s) {
            return Err(ChainError::InvalidGroup("map is not bijective".into()));
        }
        for a in g.elements() {
            for b in g.elements() {
                if self.apply(g.mul(a, b)) != g.mul(self.apply(a), self.apply(b)) {
                    return Err(ChainError::NotAHomomorphism(a, b));
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.perm[x as usize]
    }

    /// self ∘ other.
    pub fn compose(&self, other: &Self) -> Self {
        GroupAutomorphism { perm: other.perm.iter().map(|&x| self.apply(x)).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut perm = vec![0; self.perm.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            perm[p as usize] = i as u32;
        }
        GroupAutomorphism { perm }
    }

    pub fn perm(&self) -> &[u32] {
        &self.perm
    }
}

/// Invertible matrices over a ring, interned on first use. Index 0 is the
/// identity.
#[derive(Debug)]
pub struct MatrixGroup {
    ring: Ring,
    dim: usize,
    store: RefCell<Store>,
}

#[derive(Debug, Default)]
struct Store {
    mats: Vec<Mat>,
    index: HashMap<Mat, u32>,
    inverse: Vec<Option<u32>>,
}

impl MatrixGroup {
    pub fn new(ring: &Ring, dim: usize) -> Self {
        let g = MatrixGroup { ring: ring.clone(), dim, store: RefCell::new(Store::default()) };
        g.push(Mat::identity(ring, dim));
        g
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn push(&self, m: Mat) -> u32 {
        let mut st = self.store.borrow_mut();
        if let Some(&i) = st.index.get(&m) {
            return i;
        }
        let i = st.mats.len() as u32;
        st.mats.push(m.clone());
        st.index.insert(m, i);
        st.inverse.push(None);
        i
    }

    /// Interns an invertible matrix.
    pub fn intern(&self, m: &Mat) -> Result<u32> {
        if m.rows != self.dim || m.cols != self.dim {
            return Err(ChainError::Mismatch);
        }
        let m = m.reduce(&self.ring, self.ring.prec() as i64);
        if let Some(&i) = self.store.borrow().index.get(&m) {
            return Ok(i);
        }
        if !m.is_invertible(&self.ring) {
            return Err(ChainError::InvalidGroup("matrix is not invertible".into()));
        }
        Ok(self.push(m))
    }

    pub fn get(&self, i: u32) -> Mat {
        self.store.borrow().mats[i as usize].clone()
    }

    pub fn len(&self) -> usize {
        self.store.borrow().mats.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl GroupCtx for MatrixGroup {
    fn mul(&self, a: u32, b: u32) -> u32 {
        let m = self.get(a).mul(&self.ring, &self.get(b)).expect("square matrices of one size");
        self.push(m)
    }
    fn inv(&self, a: u32) -> u32 {
        if let Some(i) = self.store.borrow().inverse[a as usize] {
            return i;
        }
        let m = self.get(a).inv(&self.ring).expect("interned matrices are invertible");
        let i = self.push(m);
        let mut st = self.store.borrow_mut();
        st.inverse[a as usize] = Some(i);
        st.inverse[i as usize] = Some(a);
        i
    }
    fn label(&self, a: u32) -> String {
        let rows = self.get(a).format(&self.ring);
        format!("[{}]", rows.iter().map(|r| format!("[{}]", r.join(","))).collect::<Vec<_>>().join(","))
    }
}
