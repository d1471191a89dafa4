//! Matrix polynomials over O/l^K in the simplex variables z_0..z_{s-1}.
//!
//! An element of O is stored as its e×e multiplication matrix over Z/l^K, so
//! a d×d matrix over O becomes a de×de integer matrix and every product is a
//! plain integer matrix product with lazy u128 accumulation.

use padic_core::{Elt, Mat, Ring};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Monomials of total degree ≤ c in s variables, graded, with the product table.
#[derive(Debug)]
pub struct MonoTable {
    pub s: usize,
    pub cutoff: u32,
    pub monos: Vec<Vec<u32>>,
    pub degree: Vec<u32>,
    /// Index of mono - e_j, when defined.
    pub down: Vec<Vec<Option<u32>>>,
    /// For each output monomial, the pairs (i, j) with mono_i + mono_j = it.
    pub by_out: Vec<Vec<(u32, u32)>>,
}

impl MonoTable {
    fn build(s: usize, cutoff: u32) -> Self {
        let mut monos: Vec<Vec<u32>> = Vec::new();
        for deg in 0..=cutoff {
            let mut cur = vec![0u32; s];
            compositions(deg, 0, &mut cur, &mut monos);
        }
        let index: HashMap<Vec<u32>, u32> = monos.iter().enumerate().map(|(i, m)| (m.clone(), i as u32)).collect();
        let degree: Vec<u32> = monos.iter().map(|m| m.iter().sum()).collect();
        let down = monos
            .iter()
            .map(|m| {
                (0..s)
                    .map(|j| {
                        if m[j] == 0 {
                            return None;
                        }
                        let mut d = m.clone();
                        d[j] -= 1;
                        index.get(&d).copied()
                    })
                    .collect()
            })
            .collect();
        let mut by_out = vec![Vec::new(); monos.len()];
        for (i, a) in monos.iter().enumerate() {
            for (j, b) in monos.iter().enumerate() {
                if degree[i] + degree[j] <= cutoff {
                    let sum: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                    by_out[index[&sum] as usize].push((i as u32, j as u32));
                }
            }
        }
        MonoTable { s, cutoff, monos, degree, down, by_out }
    }

    pub fn get(s: usize, cutoff: u32) -> Arc<MonoTable> {
        static CACHE: OnceLock<Mutex<HashMap<(usize, u32), Arc<MonoTable>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().unwrap();
        guard.entry((s, cutoff)).or_insert_with(|| Arc::new(MonoTable::build(s, cutoff))).clone()
    }

    pub fn len(&self) -> usize {
        self.monos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monos.is_empty()
    }
}

/// All exponent vectors with the given total degree, in lexicographically
/// decreasing order of the first entries.
fn compositions(deg: u32, pos: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    let s = cur.len();
    if pos + 1 == s {
        cur[pos] = deg;
        out.push(cur.clone());
        return;
    }
    for k in (0..=deg).rev() {
        cur[pos] = k;
        compositions(deg - k, pos + 1, cur, out);
    }
    cur[pos] = 0;
}

pub type ZMat = Vec<u64>;

#[derive(Debug)]
pub struct Engine {
    pub m: u64,
    pub d: usize,
    pub e: usize,
    pub dim: usize,
    mpi_pows: Vec<Vec<u64>>,
    flush: u64,
}

impl Engine {
    pub fn new(ring: &Ring, d: usize) -> Self {
        let m = ring.word_modulus();
        let e = ring.e() as usize;
        let spec = ring.spec();
        let c: Vec<i64> = if spec.eisenstein.is_empty() { vec![-(ring.ell() as i64)] } else { spec.eisenstein.clone() };
        let red = |x: i64| x.rem_euclid(m as i64) as u64;
        // multiplication by π in the basis 1, π, …, π^(e-1)
        let mut mpi = vec![0u64; e * e];
        for j in 0..e {
            if j + 1 < e {
                mpi[(j + 1) * e + j] = 1;
            } else {
                for i in 0..e {
                    mpi[i * e + j] = red(-c[i]);
                }
            }
        }
        let mut id = vec![0u64; e * e];
        for i in 0..e {
            id[i * e + i] = 1 % m;
        }
        let mut mpi_pows = vec![id];
        for _ in 1..e {
            let last = mpi_pows.last().unwrap();
            mpi_pows.push(small_mul(last, &mpi, e, m));
        }
        let mm = (m - 1) as u128;
        let flush = (u128::MAX / (mm * mm).max(1)).min(u64::MAX as u128) as u64;
        Engine { m, d, e, dim: d * e, mpi_pows, flush }
    }

    pub fn identity(&self) -> ZMat {
        let mut z = vec![0u64; self.dim * self.dim];
        for i in 0..self.dim {
            z[i * self.dim + i] = 1 % self.m;
        }
        z
    }

    pub fn zero(&self) -> ZMat {
        vec![0u64; self.dim * self.dim]
    }

    /// The d×d matrix over O as a de×de matrix over Z/l^K.
    pub fn lift(&self, ring: &Ring, a: &Mat) -> ZMat {
        let (e, dim, m) = (self.e, self.dim, self.m);
        let mut z = vec![0u64; dim * dim];
        for bi in 0..self.d {
            for bj in 0..self.d {
                let co = ring.coords(a.get(bi, bj));
                for (k, &ck) in co.iter().enumerate() {
                    if ck == 0 {
                        continue;
                    }
                    let p = &self.mpi_pows[k];
                    for r in 0..e {
                        for c in 0..e {
                            let slot = &mut z[(bi * e + r) * dim + bj * e + c];
                            *slot = ((*slot as u128 + ck as u128 * p[r * e + c] as u128) % m as u128) as u64;
                        }
                    }
                }
            }
        }
        z
    }

    /// Reads back the d×d matrix over O from the first column of each block.
    pub fn lower(&self, ring: &Ring, z: &ZMat) -> Mat {
        let mut out = Mat::zeros(self.d, self.d);
        for bi in 0..self.d {
            for bj in 0..self.d {
                out.set(bi, bj, self.read(ring, |r| z[(bi * self.e + r) * self.dim + bj * self.e]));
            }
        }
        out
    }

    fn read(&self, ring: &Ring, f: impl Fn(usize) -> u64) -> Elt {
        let co: Vec<i64> = (0..self.e).map(|r| f(r) as i64).collect();
        ring.from_coords(&co)
    }

    pub fn is_zero(z: &ZMat) -> bool {
        z.iter().all(|&x| x == 0)
    }

    pub fn neg(&self, a: &ZMat) -> ZMat {
        a.iter().map(|&x| if x == 0 { 0 } else { self.m - x }).collect()
    }

    pub fn mul(&self, a: &ZMat, b: &ZMat) -> ZMat {
        let mut acc = vec![0u128; self.dim * self.dim];
        self.mul_acc(&mut acc, a, b);
        self.reduce(&acc)
    }

    fn mul_acc(&self, acc: &mut [u128], a: &ZMat, b: &ZMat) {
        let n = self.dim;
        for i in 0..n {
            for k in 0..n {
                let x = a[i * n + k] as u128;
                if x == 0 {
                    continue;
                }
                let row = &b[k * n..(k + 1) * n];
                let out = &mut acc[i * n..(i + 1) * n];
                for (o, &y) in out.iter_mut().zip(row) {
                    *o += x * y as u128;
                }
            }
        }
    }

    fn reduce(&self, acc: &[u128]) -> ZMat {
        acc.iter().map(|&x| (x % self.m as u128) as u64).collect()
    }

    fn reduce_in_place(&self, acc: &mut [u128]) {
        for x in acc.iter_mut() {
            *x %= self.m as u128;
        }
    }

    /// Σ_j c_j M_j for a matrix polynomial times a constant on the right.
    pub fn poly_mul_const(&self, p: &[ZMat], b: &ZMat) -> Vec<ZMat> {
        p.iter().map(|a| if Self::is_zero(a) { self.zero() } else { self.mul(a, b) }).collect()
    }

    /// Truncated product of two matrix polynomials.
    pub fn poly_mul(&self, t: &MonoTable, p: &[ZMat], q: &[ZMat]) -> Vec<ZMat> {
        let pz: Vec<bool> = p.iter().map(Self::is_zero).collect();
        let qz: Vec<bool> = q.iter().map(Self::is_zero).collect();
        let n2 = self.dim * self.dim;
        let mut acc = vec![0u128; n2];
        let mut out = Vec::with_capacity(t.len());
        for pairs in &t.by_out {
            acc.iter_mut().for_each(|x| *x = 0);
            let mut cnt = 0u64;
            for &(i, j) in pairs {
                if pz[i as usize] || qz[j as usize] {
                    continue;
                }
                if cnt + self.dim as u64 > self.flush {
                    self.reduce_in_place(&mut acc);
                    cnt = 0;
                }
                self.mul_acc(&mut acc, &p[i as usize], &q[j as usize]);
                cnt += self.dim as u64;
            }
            out.push(self.reduce(&acc));
        }
        out
    }

    /// Trace over O of the truncated product, one coordinate vector per monomial.
    pub fn poly_mul_trace(&self, t: &MonoTable, p: &[ZMat], q: &[ZMat], acc_out: &mut [Vec<u128>], cnt: &mut [u64]) {
        let (n, e) = (self.dim, self.e);
        let pz: Vec<bool> = p.iter().map(Self::is_zero).collect();
        let qz: Vec<bool> = q.iter().map(Self::is_zero).collect();
        for (k, pairs) in t.by_out.iter().enumerate() {
            let acc = &mut acc_out[k];
            for &(i, j) in pairs {
                if pz[i as usize] || qz[j as usize] {
                    continue;
                }
                if cnt[k] + (self.d * n) as u64 > self.flush {
                    for x in acc.iter_mut() {
                        *x %= self.m as u128;
                    }
                    cnt[k] = 0;
                }
                let (a, b) = (&p[i as usize], &q[j as usize]);
                for bi in 0..self.d {
                    let col = bi * e;
                    for r in 0..e {
                        let row = &a[(bi * e + r) * n..(bi * e + r + 1) * n];
                        let mut s = 0u128;
                        for (kk, &x) in row.iter().enumerate() {
                            s += x as u128 * b[kk * n + col] as u128;
                        }
                        acc[r] += s;
                    }
                }
                cnt[k] += (self.d * n) as u64;
            }
        }
    }

    pub fn finish_trace(&self, ring: &Ring, acc: &[Vec<u128>]) -> Vec<Elt> {
        acc.iter().map(|a| self.read(ring, |r| (a[r] % self.m as u128) as u64)).collect()
    }
}

fn small_mul(a: &[u64], b: &[u64], e: usize, m: u64) -> Vec<u64> {
    let mut out = vec![0u64; e * e];
    for i in 0..e {
        for j in 0..e {
            let mut s = 0u128;
            for k in 0..e {
                s += a[i * e + k] as u128 * b[k * e + j] as u128 % m as u128;
            }
            out[i * e + j] = (s % m as u128) as u64;
        }
    }
    out
}
