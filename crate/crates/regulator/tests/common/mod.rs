#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use padic_core::{Mat, Ring, RingSpec};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

pub fn ring(ell: u64, prec: u32) -> Ring {
    Ring::from_spec(&RingSpec::new(ell, prec)).unwrap()
}

/// Z_3[ζ_3] with π = ζ_3 - 1, π² = -3π - 3.
pub fn zeta_ring(prec: u32) -> Ring {
    Ring::from_spec(&RingSpec { ell: 3, e: 2, prec, eisenstein: vec![3, 3] }).unwrap()
}

pub fn mat(r: &Ring, rows: &[&[i64]]) -> Mat {
    Mat::from_rows(r, &rows.iter().map(|x| x.to_vec()).collect::<Vec<_>>()).unwrap()
}

/// Integer entries of 1 + l^b·Y with Y random in [-4, 4].
pub fn k1_int(rng: &mut ChaCha8Rng, ell: i64, b: u32, d: usize) -> Vec<Vec<i64>> {
    (0..d)
        .map(|i| (0..d).map(|j| i64::from(i == j) + ell.pow(b) * rng.gen_range(-4..=4)).collect())
        .collect()
}

pub fn to_mat(r: &Ring, m: &[Vec<i64>]) -> Mat {
    Mat::from_rows(r, m).unwrap()
}

pub fn random_k1(r: &Ring, rng: &mut ChaCha8Rng, b: u32, d: usize) -> Mat {
    let mut m = Mat::identity(r, d);
    for i in 0..d {
        for j in 0..d {
            let x: Vec<i64> = (0..r.e()).map(|_| rng.gen_range(-4..=4)).collect();
            let y = r.mul(r.from_coords(&x), r.pow(r.pi(), b as u64));
            m.set(i, j, r.add(m.get(i, j), y));
        }
    }
    m
}

pub fn random_gl(r: &Ring, rng: &mut ChaCha8Rng, d: usize) -> Mat {
    loop {
        let mut m = Mat::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                let x: Vec<i64> = (0..r.e()).map(|_| rng.gen_range(-40..=40)).collect();
                m.set(i, j, r.from_coords(&x));
            }
        }
        if m.is_invertible(r) {
            return m;
        }
    }
}

// ---- exact rational oracle ----

type QMat = Vec<Vec<BigRational>>;
type QPoly = BTreeMap<Vec<u32>, QMat>;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn qzero(d: usize) -> QMat {
    vec![vec![BigRational::zero(); d]; d]
}

fn qid(d: usize) -> QMat {
    (0..d).map(|i| (0..d).map(|j| q(i64::from(i == j))).collect()).collect()
}

fn qmul(a: &QMat, b: &QMat) -> QMat {
    let d = a.len();
    let mut out = qzero(d);
    for i in 0..d {
        for k in 0..d {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..d {
                out[i][j] += &a[i][k] * &b[k][j];
            }
        }
    }
    out
}

fn qadd_into(a: &mut QMat, b: &QMat, sign: i64) {
    for (ra, rb) in a.iter_mut().zip(b) {
        for (x, y) in ra.iter_mut().zip(rb) {
            *x += y * q(sign);
        }
    }
}

fn qinv(a: &QMat) -> QMat {
    let d = a.len();
    let mut m: Vec<Vec<BigRational>> = a.iter().zip(qid(d)).map(|(r, i)| r.iter().cloned().chain(i).collect()).collect();
    for c in 0..d {
        let p = (c..d).find(|&r| !m[r][c].is_zero()).unwrap();
        m.swap(c, p);
        let piv = m[c][c].clone();
        for x in m[c].iter_mut() {
            *x /= &piv;
        }
        for r in 0..d {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                let row = m[c].clone();
                for (x, y) in m[r].iter_mut().zip(row) {
                    *x -= &f * y;
                }
            }
        }
    }
    m.into_iter().map(|r| r[d..].to_vec()).collect()
}

fn pmul(a: &QPoly, b: &QPoly, cutoff: u32) -> QPoly {
    let mut out = QPoly::new();
    for (ea, ma) in a {
        for (eb, mb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            if e.iter().sum::<u32>() > cutoff {
                continue;
            }
            let p = qmul(ma, mb);
            let d = p.len();
            qadd_into(out.entry(e).or_insert_with(|| qzero(d)), &p, 1);
        }
    }
    out
}

fn fact(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * BigInt::from(k))
}

fn perms(n: usize) -> Vec<(Vec<usize>, i64)> {
    if n == 0 {
        return vec![(vec![], 1)];
    }
    let mut out = Vec::new();
    for (p, s) in perms(n - 1) {
        for pos in 0..=p.len() {
            let mut v = p.clone();
            v.insert(pos, n - 1);
            // inserting the largest element at pos adds len - pos inversions
            let sign = if (p.len() - pos) % 2 == 0 { s } else { -s };
            out.push((v, sign));
        }
    }
    out
}

/// Coefficients of dz_0∧…∧dz_{s-1} in (ν⁻¹dν)^s for ν = Σ z_i g_i on the
/// simplex, by dense rational expansion.
pub fn oracle_top(gs: &[Vec<Vec<i64>>], cutoff: u32) -> QPoly {
    let s = gs.len() - 1;
    let d = gs[0].len();
    let qg: Vec<QMat> = gs.iter().map(|g| g.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()).collect();
    // ν = g_s + Σ_j z_j (g_j - g_s), ν⁻¹ = (1 + Σ z_j C_j)⁻¹ g_s⁻¹ with C_j = g_s⁻¹(g_j - g_s)
    let gsi = qinv(&qg[s]);
    let cs: Vec<QMat> = (0..s)
        .map(|j| {
            let mut diff = qg[j].clone();
            qadd_into(&mut diff, &qg[s], -1);
            qmul(&gsi, &diff)
        })
        .collect();
    let mut w = QPoly::new();
    for (j, c) in cs.iter().enumerate() {
        let mut e = vec![0u32; s];
        e[j] = 1;
        let mut neg = qzero(d);
        qadd_into(&mut neg, c, -1);
        w.insert(e, neg);
    }
    // (1 + W)⁻¹ as the geometric series in -W
    let mut r = QPoly::new();
    r.insert(vec![0; s], qid(d));
    let mut pw = r.clone();
    for _ in 0..cutoff {
        pw = pmul(&pw, &w, cutoff);
        for (e, m) in &pw {
            qadd_into(r.entry(e.clone()).or_insert_with(|| qzero(d)), m, 1);
        }
    }
    let forms: Vec<QPoly> = cs.iter().map(|c| r.iter().map(|(e, m)| (e.clone(), qmul(m, c))).collect()).collect();
    let mut top = QPoly::new();
    for (p, sign) in perms(s) {
        let mut acc = forms[p[0]].clone();
        for &k in &p[1..] {
            acc = pmul(&acc, &forms[k], cutoff);
        }
        for (e, m) in &acc {
            qadd_into(top.entry(e.clone()).or_insert_with(|| qzero(d)), m, sign);
        }
    }
    top
}

/// (-1)^s Σ_a a!/(|a|+s)! Tr T'_a from the dense oracle.
pub fn oracle_phi(gs: &[Vec<Vec<i64>>], cutoff: u32) -> BigRational {
    let s = gs.len() - 1;
    let top = oracle_top(gs, cutoff);
    let mut acc = BigRational::zero();
    for (e, m) in &top {
        let tr: BigRational = (0..m.len()).map(|i| m[i][i].clone()).sum();
        let num = e.iter().fold(BigInt::one(), |a, &x| a * fact(x));
        let den = fact(e.iter().sum::<u32>() + s as u32);
        acc += tr * BigRational::new(num, den);
    }
    if s % 2 == 1 {
        -acc
    } else {
        acc
    }
}

/// min over x > cutoff + s of b·x - (s+1)·e·(number of base-l digits of x) - e·v(s!), by direct search.
pub fn brute_tail(ell: u64, e: i64, s: u64, b: i64, cutoff: u64) -> i64 {
    let vs: i64 = (1..=s).map(|k| padic_core::val_u64(k, ell) as i64).sum();
    let ndigits = |mut x: u64| {
        let mut t = 0;
        while x > 0 {
            t += 1;
            x /= ell;
        }
        t
    };
    let best = (cutoff + 1 + s..20_000).map(|x| b * x as i64 - (s as i64 + 1) * e * ndigits(x)).min().unwrap();
    best - e * vs
}
