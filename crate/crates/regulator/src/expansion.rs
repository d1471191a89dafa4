//! T(X) = (ν⁻¹dν)^s on the simplex and the truncated sum Φ_s.
//!
//! With z_s = 1 - Σ z_i eliminated, ν = g_s(1 + Σ_{j<s} B_j z_j) for
//! B_j = g_s⁻¹g_j - 1, so ν⁻¹dν = Σ_j R B_j dz_j with R = (1 + Σ B_j z_j)⁻¹,
//! and the top coefficient is T' = Σ_π sgn(π) R B_π(0) ⋯ R B_π(s-1).
//! Integrating z^a over the simplex gives a!/(|a|+s)!, and
//! Φ_s = (-1)^s Σ_a a!/(|a|+s)! Tr T'_a.

use crate::engine::{Engine, MonoTable, ZMat};
use crate::error::{RegError, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use padic_core::{factorial_valuation, fmt_rational, tail_min, Elt, Mat, PadicScalar, Ring, EXACT};
use serde::Serialize;

/// A truncated regulator value. `certified_abs` is in 𝔩-units: the true value
/// agrees with `value` modulo 𝔩^certified_abs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegulatorValue {
    pub value: PadicScalar,
    pub certified_abs: i64,
    pub cutoff: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct RegulatorJson {
    pub value: String,
    pub certified_error: String,
    pub cutoff: u32,
}

impl RegulatorValue {
    pub fn exact_zero(ring: &Ring, cutoff: u32) -> Self {
        RegulatorValue { value: PadicScalar::zero_to(ring, EXACT), certified_abs: EXACT, cutoff }
    }

    /// The error exponent in l-units: |error| ≤ l^(-certified_error).
    pub fn certified_error(&self) -> BigRational {
        BigRational::new(BigInt::from(self.certified_abs), BigInt::from(self.value.ring().e()))
    }

    /// Zero modulo the certified error.
    pub fn is_certified_zero(&self) -> bool {
        self.value.truncate(self.certified_abs).is_zero()
    }

    pub fn require(self, want: i64) -> Result<Self> {
        if self.certified_abs < want {
            return Err(RegError::PrecisionExhausted { achieved: self.certified_abs, wanted: want });
        }
        Ok(self)
    }

    pub fn to_json(&self) -> RegulatorJson {
        let err = if self.certified_abs >= EXACT {
            "exact".to_string()
        } else {
            format!("{}^-{}", self.value.ring().ell(), fmt_rational(&self.certified_error()))
        };
        RegulatorJson { value: self.value.to_wire(), certified_error: err, cutoff: self.cutoff }
    }
}

/// The same scalar read in another ring with the same l and e.
pub fn rebase(x: &PadicScalar, ring: &Ring) -> PadicScalar {
    if x.is_zero() {
        return PadicScalar::zero_to(ring, x.abs_prec());
    }
    let co: Vec<i64> = x.ring().coords(x.unit()).iter().map(|&c| c as i64).collect();
    PadicScalar::from_unit(ring, x.w(), ring.from_coords(&co), x.abs_prec())
}

fn lift_mat(m: &Mat, to: &Ring, from: &Ring) -> Mat {
    let mut out = Mat::zeros(m.rows, m.cols);
    for i in 0..m.rows {
        for j in 0..m.cols {
            let co: Vec<i64> = from.coords(m.get(i, j)).iter().map(|&c| c as i64).collect();
            out.set(i, j, to.from_coords(&co));
        }
    }
    out
}

/// Largest b with every X_i in Mat(𝔩^b), capped at the ring precision.
pub fn depth(ring: &Ring, xs: &[Mat]) -> u32 {
    xs.iter().map(|x| x.min_valuation(ring)).min().unwrap_or(ring.prec()).min(ring.prec())
}

/// Lower bound, in 𝔩-units, for every term of degree |a| > cutoff:
/// b(|a|+s) + e·(-v(s!) - (s+1)·d_l(|a|+s)).
pub fn tail_bound(ell: u64, e: u32, s: usize, b: u32, cutoff: u32) -> BigRational {
    let c = BigRational::from_integer(BigInt::from(e as u64 * (s as u64 + 1)));
    let f = BigRational::from_integer(BigInt::from(b));
    let vs = BigRational::from_integer(BigInt::from(e as u64 * factorial_valuation(ell, s as u64)));
    tail_min(ell, &c, &f, cutoff as u64 + 1 + s as u64) - vs
}

/// Smallest cutoff whose tail bound reaches `target` (𝔩-units).
pub fn min_cutoff(ell: u64, e: u32, s: usize, b: u32, target: i64) -> u32 {
    let t = BigRational::from_integer(BigInt::from(target));
    (0..).find(|&c| tail_bound(ell, e, s, b, c) >= t).unwrap()
}

fn check_tuple(ring: &Ring, xs: &[Mat], s: usize) -> Result<usize> {
    if s == 0 || s % 2 == 0 {
        return Err(RegError::BadTuple(format!("s = {s} must be odd")));
    }
    if xs.len() != s + 1 {
        return Err(RegError::BadTuple(format!("need {} matrices, got {}", s + 1, xs.len())));
    }
    let d = xs[0].rows;
    if d == 0 || xs.iter().any(|x| x.rows != d || x.cols != d) {
        return Err(RegError::BadTuple("matrices must be square of one size".into()));
    }
    let _ = ring;
    Ok(d)
}

/// Words of l^K above this size would overflow the lazy accumulation.
const MAX_WORD_BITS: u32 = 52;

fn work_ring(ring: &Ring, want: i64) -> Result<Ring> {
    let e = ring.e() as i64;
    let ell = ring.ell();
    let mut k = 0u32;
    let mut m: u128 = 1;
    while m * ell as u128 <= 1u128 << MAX_WORD_BITS && k < ring.max_word_exponent() {
        m *= ell as u128;
        k += 1;
    }
    let p = want.min(k as i64 * e).max(ring.prec() as i64);
    Ok(ring.with_prec(p as u32)?)
}

struct Core {
    work: Ring,
    table: std::sync::Arc<MonoTable>,
    b: u32,
    traces: Vec<Elt>,
    mats: Option<Vec<Mat>>,
}

fn core(ring: &Ring, xs: &[Mat], s: usize, cutoff: u32, full: bool) -> Result<Option<Core>> {
    let d = check_tuple(ring, xs, s)?;
    if xs.iter().all(|x| x.data.iter().all(|c| c.is_zero())) {
        return Ok(None);
    }
    let bx = depth(ring, xs);
    if bx == 0 {
        return Err(RegError::DepthZero);
    }
    let p = ring.prec() as i64;
    let work = work_ring(ring, p + bx as i64 * (cutoff as i64 + s as i64 - 1))?;
    let id = Mat::identity(&work, d);
    let gs: Vec<Mat> = xs.iter().map(|x| lift_mat(x, &work, ring).add(&work, &id)).collect::<padic_core::Result<_>>()?;
    let gsi = gs[s].inv(&work)?;
    let bs: Vec<Mat> = (0..s).map(|j| gsi.mul(&work, &gs[j])?.sub(&work, &id)).collect::<padic_core::Result<_>>()?;
    // any lift of the inputs has B_j ≡ these modulo 𝔩^P
    let b = depth(&work, &bs).min(ring.prec()).max(bx);
    let table = MonoTable::get(s, cutoff);
    let eng = Engine::new(&work, d);
    let bz: Vec<ZMat> = bs.iter().map(|m| eng.lift(&work, m)).collect();
    let n = table.len();
    // R = 1 - W·R, degree by degree
    let mut r: Vec<ZMat> = Vec::with_capacity(n);
    r.push(eng.identity());
    for k in 1..n {
        let mut acc = eng.zero();
        for (j, dn) in table.down[k].iter().enumerate() {
            if let Some(i) = dn {
                let t = eng.mul(&bz[j], &r[*i as usize]);
                for (a, x) in acc.iter_mut().zip(t) {
                    *a = (*a + x) % eng.m;
                }
            }
        }
        r.push(eng.neg(&acc));
    }
    let mj: Vec<Vec<ZMat>> = bz.iter().map(|bj| eng.poly_mul_const(&r, bj)).collect();
    let mjn: Vec<Vec<ZMat>> = mj.iter().map(|p| p.iter().map(|z| eng.neg(z)).collect()).collect();
    // Q(S ∪ {j}) += (-1)^#{i ∈ S : i > j} Q(S)·M_j
    let full_mask = (1usize << s) - 1;
    let mut q: Vec<Option<Vec<ZMat>>> = vec![None; 1 << s];
    let mut tr_acc = vec![vec![0u128; eng.e]; n];
    let mut tr_cnt = vec![0u64; n];
    let mut top: Option<Vec<ZMat>> = None;
    let mut masks: Vec<usize> = (0..full_mask).collect();
    masks.sort_by_key(|m| m.count_ones());
    for mask in masks {
        let size = mask.count_ones() as usize;
        for j in 0..s {
            if mask & (1 << j) != 0 {
                continue;
            }
            let neg = (mask >> (j + 1)).count_ones() % 2 == 1;
            let mpoly = if neg { &mjn[j] } else { &mj[j] };
            let next = mask | (1 << j);
            if size == 0 {
                q[next] = Some(mpoly.clone());
                if s == 1 {
                    top = Some(mpoly.clone());
                }
                continue;
            }
            let cur = q[mask].as_ref().unwrap();
            if size + 1 == s && !full {
                eng.poly_mul_trace(&table, cur, mpoly, &mut tr_acc, &mut tr_cnt);
                continue;
            }
            let prod = eng.poly_mul(&table, cur, mpoly);
            let slot = if next == full_mask { &mut top } else { &mut q[next] };
            match slot {
                None => *slot = Some(prod),
                Some(acc) => {
                    for (a, p) in acc.iter_mut().zip(prod) {
                        for (x, y) in a.iter_mut().zip(p) {
                            *x = (*x + y) % eng.m;
                        }
                    }
                }
            }
        }
    }
    let (traces, mats) = if full || s == 1 {
        let top = top.unwrap();
        let mats: Vec<Mat> = top.iter().map(|z| eng.lower(&work, z)).collect();
        (mats.iter().map(|m| m.trace(&work)).collect(), Some(mats))
    } else {
        (eng.finish_trace(&work, &tr_acc), None)
    };
    Ok(Some(Core { work, table, b, traces, mats }))
}

/// Coefficients T'_a of dz_0∧…∧dz_{s-1} for |a| ≤ cutoff.
#[derive(Clone, Debug)]
pub struct TExpansion {
    pub ring: Ring,
    pub s: usize,
    pub cutoff: u32,
    pub depth: u32,
    pub coeffs: Vec<(Vec<u32>, Mat)>,
}

/// T(X) to degree `cutoff`, each coefficient checked to lie in Mat(𝔩^{b(|a|+s)}).
pub fn t_expansion(ring: &Ring, xs: &[Mat], s: usize, cutoff: u32) -> Result<TExpansion> {
    let d = check_tuple(ring, xs, s)?;
    let Some(c) = core(ring, xs, s, cutoff, true)? else {
        let table = MonoTable::get(s, cutoff);
        let coeffs = table.monos.iter().map(|m| (m.clone(), Mat::zeros(d, d))).collect();
        return Ok(TExpansion { ring: ring.clone(), s, cutoff, depth: ring.prec(), coeffs });
    };
    let mats = c.mats.unwrap();
    for (k, m) in mats.iter().enumerate() {
        let need = (c.b as i64 * (c.table.degree[k] as i64 + s as i64)).min(c.work.prec() as i64);
        if (m.min_valuation(&c.work) as i64) < need {
            return Err(RegError::Membership(c.table.degree[k]));
        }
    }
    let coeffs = c.table.monos.iter().cloned().zip(mats).collect();
    Ok(TExpansion { ring: c.work, s, cutoff, depth: c.b, coeffs })
}

/// a!/(|a|+s)! for a ∈ N^s.
pub fn simplex_weight(a: &[u32]) -> BigRational {
    let fact = |n: u64| (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k));
    let num = a.iter().fold(BigInt::one(), |acc, &x| acc * fact(x as u64));
    let total: u64 = a.iter().map(|&x| x as u64).sum::<u64>() + a.len() as u64;
    BigRational::new(num, fact(total))
}

/// The truncated sum Σ_{|a| ≤ cutoff}, at the precision the inputs allow, and
/// the depth b used for the tail. `None` for an all-zero tuple.
pub fn phi_partial(ring: &Ring, xs: &[Mat], s: usize, cutoff: u32) -> Result<Option<(PadicScalar, u32)>> {
    let Some(c) = core(ring, xs, s, cutoff, false)? else {
        return Ok(None);
    };
    let p = ring.prec() as i64;
    let pw = c.work.prec() as i64;
    let mut acc = PadicScalar::zero_to(&c.work, EXACT);
    for (k, t) in c.traces.iter().enumerate() {
        let deg = c.table.degree[k] as i64;
        // one factor perturbed by 𝔩^P, the other |a|+s-1 in 𝔩^b
        let abs = pw.min(p + c.b as i64 * (deg + s as i64 - 1));
        let term = PadicScalar::from_elt_to(&c.work, *t, abs).mul_rational(&simplex_weight(&c.table.monos[k]));
        acc = acc.add(&term);
    }
    if s % 2 == 1 {
        acc = acc.neg();
    }
    Ok(Some((rebase(&acc, ring), c.b)))
}

/// Φ_s(T(X)) truncated at |a| ≤ cutoff, for X_i = g_i - 1 known modulo 𝔩^P.
pub fn phi_s(ring: &Ring, xs: &[Mat], s: usize, cutoff: u32) -> Result<RegulatorValue> {
    let Some((acc, b)) = phi_partial(ring, xs, s, cutoff)? else {
        return Ok(RegulatorValue::exact_zero(ring, cutoff));
    };
    let tail = tail_bound(ring.ell(), ring.e(), s, b, cutoff).ceil().to_integer();
    let tail = i64::try_from(tail).unwrap_or(EXACT);
    let cert = acc.abs_prec().min(tail);
    Ok(RegulatorValue { value: acc.truncate(cert), certified_abs: cert, cutoff })
}

/// Φ̃_s(g_0, …, g_s) = Φ_s(T(g_0 - 1, …, g_s - 1)) for a tuple in K_1.
pub fn phi_tilde(ring: &Ring, gs: &[Mat], s: usize, cutoff: u32) -> Result<RegulatorValue> {
    let xs = k1_shift(ring, gs)?;
    phi_s(ring, &xs, s, cutoff)
}

/// g_i - 1, after checking g_i ≡ 1 modulo 𝔩.
pub fn k1_shift(ring: &Ring, gs: &[Mat]) -> Result<Vec<Mat>> {
    let mut xs = Vec::with_capacity(gs.len());
    for (i, g) in gs.iter().enumerate() {
        if !g.is_square() {
            return Err(RegError::BadTuple("matrices must be square".into()));
        }
        let x = g.sub(ring, &Mat::identity(ring, g.rows))?;
        if x.data.iter().any(|c| !c.is_zero() && ring.valuation(*c) == 0) {
            return Err(RegError::NotInK1(i));
        }
        xs.push(x);
    }
    Ok(xs)
}
