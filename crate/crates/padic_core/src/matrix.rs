//! Dense matrices over O/𝔩^P.

use crate::error::{PadicError, Result};
use crate::ring::{Elt, Ring};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Elt>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![Elt::ZERO; rows * cols] }
    }

    pub fn identity(ring: &Ring, n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn from_i64(ring: &Ring, rows: usize, cols: usize, entries: &[i64]) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(PadicError::Shape);
        }
        Ok(Mat { rows, cols, data: entries.iter().map(|&x| ring.from_i64(x)).collect() })
    }

    /// Square matrix from rows of integers.
    pub fn from_rows(ring: &Ring, rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        let c = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != c) {
            return Err(PadicError::Shape);
        }
        let flat: Vec<i64> = rows.iter().flatten().copied().collect();
        Self::from_i64(ring, n, c, &flat)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elt {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: Elt) {
        self.data[i * self.cols + j] = x;
    }

    pub fn add(&self, ring: &Ring, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(PadicError::Shape);
        }
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| ring.add(a, b)).collect();
        Ok(Mat { rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, ring: &Ring, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(PadicError::Shape);
        }
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| ring.sub(a, b)).collect();
        Ok(Mat { rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, ring: &Ring, s: Elt) -> Self {
        let data = self.data.iter().map(|&a| ring.mul(a, s)).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn mul(&self, ring: &Ring, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(PadicError::Shape);
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Elt::ZERO;
                for k in 0..self.cols {
                    acc = ring.add(acc, ring.mul(self.get(i, k), other.get(k, j)));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn trace(&self, ring: &Ring) -> Elt {
        (0..self.rows.min(self.cols)).fold(Elt::ZERO, |acc, i| ring.add(acc, self.get(i, i)))
    }

    pub fn det(&self, ring: &Ring) -> Result<Elt> {
        if !self.is_square() {
            return Err(PadicError::Shape);
        }
        Ok(det_rec(ring, self))
    }

    pub fn is_invertible(&self, ring: &Ring) -> bool {
        self.det(ring).map(|d| ring.is_unit(d)).unwrap_or(false)
    }

    /// Gauss-Jordan with unit pivots; these exist exactly when det is a unit.
    pub fn inv(&self, ring: &Ring) -> Result<Self> {
        if !self.is_square() {
            return Err(PadicError::Shape);
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut b = Self::identity(ring, n);
        for c in 0..n {
            let p = (c..n).find(|&r| ring.is_unit(a.get(r, c))).ok_or(PadicError::NotUnit)?;
            if p != c {
                for j in 0..n {
                    let (x, y) = (a.get(p, j), a.get(c, j));
                    a.set(p, j, y);
                    a.set(c, j, x);
                    let (x, y) = (b.get(p, j), b.get(c, j));
                    b.set(p, j, y);
                    b.set(c, j, x);
                }
            }
            let s = ring.inv(a.get(c, c))?;
            for j in 0..n {
                a.set(c, j, ring.mul(a.get(c, j), s));
                b.set(c, j, ring.mul(b.get(c, j), s));
            }
            for r in 0..n {
                if r == c {
                    continue;
                }
                let f = a.get(r, c);
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    a.set(r, j, ring.sub(a.get(r, j), ring.mul(f, a.get(c, j))));
                    b.set(r, j, ring.sub(b.get(r, j), ring.mul(f, b.get(c, j))));
                }
            }
        }
        Ok(b)
    }

    pub fn pow(&self, ring: &Ring, mut n: u64) -> Result<Self> {
        if !self.is_square() {
            return Err(PadicError::Shape);
        }
        let mut acc = Self::identity(ring, self.rows);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(ring, &base)?;
            }
            base = base.mul(ring, &base)?;
            n >>= 1;
        }
        Ok(acc)
    }

    pub fn is_identity(&self, ring: &Ring) -> bool {
        self.is_square() && *self == Self::identity(ring, self.rows)
    }

    /// Entrywise residues in F_l.
    pub fn residue(&self, ring: &Ring) -> Vec<u64> {
        self.data.iter().map(|&a| ring.residue(a)).collect()
    }

    /// Minimal valuation over all entries (P for the zero matrix).
    pub fn min_valuation(&self, ring: &Ring) -> u32 {
        self.data.iter().map(|&a| ring.valuation(a)).min().unwrap_or(ring.prec())
    }

    /// Entrywise reduction modulo 𝔩^k.
    pub fn reduce(&self, ring: &Ring, k: i64) -> Self {
        let data = self.data.iter().map(|&a| ring.reduce(a, k)).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn format(&self, ring: &Ring) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| ring.format(self.get(i, j))).collect()).collect()
    }

    pub fn parse(ring: &Ring, rows: &[Vec<String>]) -> Result<Self> {
        let n = rows.len();
        let c = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != c) {
            return Err(PadicError::Shape);
        }
        let mut data = Vec::with_capacity(n * c);
        for r in rows {
            for s in r {
                data.push(ring.parse(s)?);
            }
        }
        Ok(Mat { rows: n, cols: c, data })
    }
}

/// Expansion along the first row; matrices here are at most 4x4 or so.
fn det_rec(ring: &Ring, m: &Mat) -> Elt {
    let n = m.rows;
    match n {
        0 => ring.one(),
        1 => m.get(0, 0),
        2 => ring.sub(ring.mul(m.get(0, 0), m.get(1, 1)), ring.mul(m.get(0, 1), m.get(1, 0))),
        _ => {
            let mut acc = Elt::ZERO;
            for j in 0..n {
                let a = m.get(0, j);
                if a.is_zero() {
                    continue;
                }
                let mut minor = Mat::zeros(n - 1, n - 1);
                for i in 1..n {
                    let mut cc = 0;
                    for k in 0..n {
                        if k != j {
                            minor.set(i - 1, cc, m.get(i, k));
                            cc += 1;
                        }
                    }
                }
                let t = ring.mul(a, det_rec(ring, &minor));
                acc = if j % 2 == 0 { ring.add(acc, t) } else { ring.sub(acc, t) };
            }
            acc
        }
    }
}
