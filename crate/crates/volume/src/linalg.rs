//! Intertwiners h with h·φ(ρ(γ)) = ρ(σ̃(γ))·h, and determinant normalization.

use crate::error::{Result, VolError};
use crate::ringaut::RingAutomorphism;
use bar_chains::{FiniteGroup, GroupAutomorphism, MatrixRep};
use padic_core::{hensel_root, Elt, Mat, PadicError, PadicScalar, Ring};

/// Combinations of residual kernel vectors tried before giving up.
const MAX_COMBINATIONS: u64 = 200_000;

/// Diagonalizes `m` over the chain ring O/𝔩^P by row and column operations
/// and returns the column transform R together with the rank; columns
/// rank.. of R span the kernel modulo 𝔩-torsion.
fn smith_columns(ring: &Ring, mut m: Vec<Vec<Elt>>, n: usize) -> (Vec<Vec<Elt>>, usize) {
    let p = ring.prec();
    let mut r: Vec<Vec<Elt>> = (0..n).map(|i| (0..n).map(|j| if i == j { ring.one() } else { ring.zero() }).collect()).collect();
    let rows = m.len();
    let mut rank = 0;
    while rank < n.min(rows) {
        let mut best: Option<(u32, usize, usize)> = None;
        for (i, row) in m.iter().enumerate().skip(rank) {
            for (j, &x) in row.iter().enumerate().skip(rank) {
                let v = ring.valuation(x);
                if v < p && best.map_or(true, |b| v < b.0) {
                    best = Some((v, i, j));
                }
            }
        }
        let Some((v, pi, pj)) = best else { break };
        m.swap(rank, pi);
        for row in m.iter_mut() {
            row.swap(rank, pj);
        }
        for row in r.iter_mut() {
            row.swap(rank, pj);
        }
        let up = ring.inv(ring.div_pi_pow(m[rank][rank], v)).expect("pivot unit");
        let prow = m[rank].clone();
        for row in m.iter_mut().skip(rank + 1) {
            let f = ring.mul(ring.div_pi_pow(row[rank], v), up);
            if f.is_zero() {
                continue;
            }
            for (x, &y) in row.iter_mut().zip(&prow) {
                *x = ring.sub(*x, ring.mul(f, y));
            }
        }
        for j in rank + 1..n {
            let f = ring.mul(ring.div_pi_pow(m[rank][j], v), up);
            if f.is_zero() {
                continue;
            }
            for row in m.iter_mut() {
                row[j] = ring.sub(row[j], ring.mul(f, row[rank]));
            }
            for row in r.iter_mut() {
                row[j] = ring.sub(row[j], ring.mul(f, row[rank]));
            }
        }
        rank += 1;
    }
    (r, rank)
}

/// An invertible h with h·φ(ρ(γ)) = ρ(σ̃(γ))·h for all γ in `gens` (all of
/// Γ when empty). The first invertible combination of the residual kernel
/// basis, in lexicographic order of coefficients, is returned.
pub fn intertwiner(g: &FiniteGroup, rho: &MatrixRep, sigma: &GroupAutomorphism, phi: &RingAutomorphism, gens: &[u32]) -> Result<Mat> {
    let ring = rho.ring();
    let d = rho.dim();
    let n = d * d;
    let all: Vec<u32> = if gens.is_empty() { g.elements().collect() } else { gens.to_vec() };
    let mut eqs: Vec<Vec<Elt>> = Vec::new();
    for &x in &all {
        g.check(x)?;
        let a = phi.apply_mat(ring, rho.image(x));
        let b = rho.image(sigma.apply(x));
        for i in 0..d {
            for k in 0..d {
                let mut row = vec![ring.zero(); n];
                for j in 0..d {
                    row[i * d + j] = ring.add(row[i * d + j], a.get(j, k));
                    row[j * d + k] = ring.sub(row[j * d + k], b.get(i, j));
                }
                eqs.push(row);
            }
        }
    }
    let (r, rank) = smith_columns(ring, eqs, n);
    let basis: Vec<Mat> = (rank..n)
        .map(|c| {
            let mut m = Mat::zeros(d, d);
            for v in 0..n {
                m.set(v / d, v % d, r[v][c]);
            }
            m
        })
        .filter(|m| m.min_valuation(ring) == 0)
        .collect();
    if basis.is_empty() {
        return Err(VolError::NoIntertwiner);
    }
    let ell = ring.ell();
    let total = (ell as u128).saturating_pow(basis.len() as u32).min(MAX_COMBINATIONS as u128 + 1) as u64;
    for code in 1..total {
        let mut h = Mat::zeros(d, d);
        let mut c = code;
        for b in basis.iter().rev() {
            let lam = c % ell;
            c /= ell;
            if lam != 0 {
                h = h.add(ring, &b.scale(ring, ring.from_u64(lam)))?;
            }
        }
        if h.is_invertible(ring) {
            return Ok(h);
        }
    }
    Err(VolError::NonInvertibleOnly)
}

/// a·h with det(a·h) = target, where a^d = target·det(h)⁻¹ and a has the
/// least residue among the roots.
pub fn normalize_determinant(ring: &Ring, h: &Mat, target: Elt) -> Result<Mat> {
    if !h.is_square() {
        return Err(VolError::Shape("matrix is not square".into()));
    }
    let d = h.rows as u64;
    let ell = ring.ell();
    if d % ell == 0 {
        return Err(VolError::BadExponent(d));
    }
    let det = h.det(ring)?;
    if !ring.is_unit(det) || !ring.is_unit(target) {
        return Err(VolError::Padic(PadicError::NotUnit));
    }
    let u = ring.mul(target, ring.inv(det)?);
    let ur = ring.residue(u);
    let t = (1..ell).find(|&t| ring.residue(ring.pow(ring.from_u64(t), d)) == ur).ok_or(VolError::NoRoot)?;
    let a = hensel_root(d, &PadicScalar::from_elt(ring, u), t).map_err(|e| match e {
        PadicError::NoRoot => VolError::NoRoot,
        PadicError::BadExponent(k) => VolError::BadExponent(k),
        other => VolError::Padic(other),
    })?;
    Ok(h.scale(ring, a.to_elt()?))
}
