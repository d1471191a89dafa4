//! The transfer Ψ_s from K_1 to GL_d(O) and its evaluation on bar chains.
//!
//! Ψ_s(g) = |G|⁻¹ Σ_{h ∈ GL_d(F_l)} Φ̃_s([h]g_0[hḡ_0]⁻¹, …, [h]g_s[hḡ_s]⁻¹),
//! where [·] is the entrywise Teichmüller lift and ḡ the residue matrix.

use crate::error::{RegError, Result};
use crate::expansion::{phi_tilde, RegulatorValue};
use bar_chains::{coeff_in_ring, BarChain, MatrixGroup};
use num_bigint::BigInt;
use num_rational::BigRational;
use padic_core::{Mat, PadicScalar, Ring, EXACT};
use std::collections::HashMap;

/// Residue matrices, row-major over F_l.
pub type ResMat = Vec<u64>;

fn res_mul(a: &[u64], b: &[u64], d: usize, ell: u64) -> ResMat {
    let mut out = vec![0u64; d * d];
    for i in 0..d {
        for k in 0..d {
            let x = a[i * d + k];
            if x == 0 {
                continue;
            }
            for j in 0..d {
                out[i * d + j] = (out[i * d + j] + x * b[k * d + j]) % ell;
            }
        }
    }
    out
}

fn res_det(a: &[u64], d: usize, ell: u64) -> u64 {
    let mut m: Vec<i64> = a.iter().map(|&x| x as i64).collect();
    let p = ell as i64;
    let mut det = 1i64;
    for c in 0..d {
        let Some(r) = (c..d).find(|&r| m[r * d + c] % p != 0) else { return 0 };
        if r != c {
            for j in 0..d {
                m.swap(r * d + j, c * d + j);
            }
            det = -det;
        }
        let piv = m[c * d + c];
        det = det * piv % p;
        let inv = mod_inv(piv.rem_euclid(p), p);
        for r in c + 1..d {
            let f = m[r * d + c] * inv % p;
            for j in c..d {
                m[r * d + j] = (m[r * d + j] - f * m[c * d + j]).rem_euclid(p);
            }
        }
    }
    det.rem_euclid(p) as u64
}

fn mod_inv(a: i64, p: i64) -> i64 {
    (1..p).find(|&x| a * x % p == 1).unwrap_or(0)
}

/// Whether GL_d(F_l) is small enough to sum over.
pub fn transfer_supported(ell: u64, d: usize) -> bool {
    match ell {
        3 => d <= 3,
        5 | 7 => d <= 2,
        _ => d <= 1,
    }
}

/// All of GL_d(F_l), in lexicographic order of the entries.
pub fn gl_residue_group(ell: u64, d: usize) -> Result<Vec<ResMat>> {
    if !transfer_supported(ell, d) {
        return Err(RegError::TooLarge(format!("GL_{d}(F_{ell})")));
    }
    let n = d * d;
    let total = ell.pow(n as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut a = vec![0u64; n];
        let mut c = code;
        for x in a.iter_mut().rev() {
            *x = c % ell;
            c /= ell;
        }
        if res_det(&a, d, ell) != 0 {
            out.push(a);
        }
    }
    Ok(out)
}

fn teich_mat(ring: &Ring, a: &[u64], d: usize) -> Mat {
    let mut m = Mat::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            m.set(i, j, ring.teichmuller(a[i * d + j]));
        }
    }
    m
}

fn in_k1(ring: &Ring, g: &Mat) -> bool {
    let d = g.rows;
    g.residue(ring).iter().enumerate().all(|(k, &x)| x == u64::from(k / d == k % d))
}

/// Ψ_s at cutoff `cutoff`.
pub fn psi_transfer(ring: &Ring, gs: &[Mat], s: usize, cutoff: u32) -> Result<RegulatorValue> {
    let d = gs.first().map(|g| g.rows).ok_or_else(|| RegError::BadTuple("empty tuple".into()))?;
    if gs.iter().any(|g| g.rows != d || g.cols != d) {
        return Err(RegError::BadTuple("matrices must be square of one size".into()));
    }
    if let Some(i) = gs.iter().position(|g| !g.is_invertible(ring)) {
        return Err(RegError::BadTuple(format!("entry {i} is not invertible")));
    }
    // on K_1 every summand equals Φ̃_s, since conjugating by [h] preserves it exactly
    if gs.iter().all(|g| in_k1(ring, g)) {
        return phi_tilde(ring, gs, s, cutoff);
    }
    let ell = ring.ell();
    let group = gl_residue_group(ell, d)?;
    let lifts: Vec<Mat> = group.iter().map(|h| teich_mat(ring, h, d)).collect();
    let res: Vec<ResMat> = gs.iter().map(|g| g.residue(ring)).collect();
    let index: HashMap<&ResMat, usize> = group.iter().enumerate().map(|(i, h)| (h, i)).collect();
    let mut inv_lift: HashMap<usize, Mat> = HashMap::new();
    let mut acc = PadicScalar::zero_to(ring, EXACT);
    let mut cert = EXACT;
    for (hi, h) in group.iter().enumerate() {
        let mut xs = Vec::with_capacity(gs.len());
        for (g, gr) in gs.iter().zip(&res) {
            let k = index[&res_mul(h, gr, d, ell)];
            let kinv = match inv_lift.get(&k) {
                Some(m) => m.clone(),
                None => {
                    let m = lifts[k].inv(ring)?;
                    inv_lift.insert(k, m.clone());
                    m
                }
            };
            xs.push(lifts[hi].mul(ring, g)?.mul(ring, &kinv)?);
        }
        let v = phi_tilde(ring, &xs, s, cutoff)?;
        cert = cert.min(v.certified_abs);
        acc = acc.add(&v.value);
    }
    let n = BigRational::new(BigInt::from(1), BigInt::from(group.len()));
    let value = acc.truncate(cert).mul_rational(&n);
    let cert = value.abs_prec();
    Ok(RegulatorValue { value, certified_abs: cert, cutoff })
}

/// Σ c·Ψ_3(1, g_1, g_1g_2, g_1g_2g_3) over the terms c[g_1|g_2|g_3], with each
/// tuple evaluated once.
pub fn evaluate_chain(c: &BarChain, mg: &MatrixGroup, cutoff: u32) -> Result<RegulatorValue> {
    if c.degree() != 3 {
        return Err(RegError::BadTuple(format!("chain has degree {}, need 3", c.degree())));
    }
    let ring = mg.ring().clone();
    coeff_in_ring(&ring, c)?;
    let id = Mat::identity(&ring, mg.dim());
    let mut memo: HashMap<Vec<u32>, RegulatorValue> = HashMap::new();
    let mut acc = PadicScalar::zero_to(&ring, EXACT);
    let mut cert = EXACT;
    let k_abs = c.modulus().k() as i64 * ring.e() as i64;
    for (tuple, coeff) in c.terms() {
        let v = match memo.get(tuple) {
            Some(v) => v.clone(),
            None => {
                let g1 = mg.get(tuple[0]);
                let g12 = g1.mul(&ring, &mg.get(tuple[1]))?;
                let g123 = g12.mul(&ring, &mg.get(tuple[2]))?;
                let v = psi_transfer(&ring, &[id.clone(), g1, g12, g123], 3, cutoff)?;
                memo.insert(tuple.to_vec(), v.clone());
                v
            }
        };
        // the coefficient is only known modulo l^k
        let cs = PadicScalar::from_elt_to(&ring, ring.from_u64(coeff), k_abs);
        let term = cs.mul(&v.value.truncate(v.certified_abs));
        cert = cert.min(term.abs_prec());
        acc = acc.add(&term);
    }
    let cert = cert.min(acc.abs_prec());
    Ok(RegulatorValue { value: acc.truncate(cert), certified_abs: cert, cutoff })
}
