//! The acceptance suites. Every criterion runs with a fixed seed and reports
//! PASS only when its check succeeds inside its time budget.

use crate::error::{self, CliError, Result};
use bar_chains::{
    boundary, homotopy, inn, tuples, AdCocycle, BarChain, FiniteGroup, GroupCtx, MatrixGroup, MatrixRep, Modulus, SolverCache,
};
use flows::{certify, compose_into, flow_from_field, interpolate_iterate, iterate_tpoly, lie_derivative, vector_field_log, SeriesMap, Time};
use num_bigint::BigInt;
use num_rational::BigRational;
use padic_core::{factorial_valuation, Mat, PadicScalar, Ring, RingSpec, EXACT};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use regulator::{evaluate_chain, min_cutoff, phi_tilde, psi_transfer};
use serde_json::{json, Value};
use series_ring::{antiderivative, contract, dlog, exterior_d, exterior_d_any, DiffForm, TruncSeries, VectorField};
use std::time::{Duration, Instant};
use symplectic_k2::{dlog_symbols, omega_vs_cup, poisson_bracket, SymbolList};
use volume::{
    cocycle_audit, h_independence, lift_independence, restriction_audit, AuditLine, ConjugationDatum, Volume, VolumeSetup,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Incomplete,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Incomplete => "INCOMPLETE",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: u32,
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
    pub elapsed: Duration,
    pub budget: Duration,
}

impl Outcome {
    pub fn line(&self) -> String {
        format!("{} {:>2} {}: {}", self.status.label(), self.id, self.name, self.detail)
    }
}

pub const CRITERIA: [(u32, &str, u64); 14] = [
    (1, "Legendre identity", 1),
    (2, "homotopy identity", 30),
    (3, "F-composition", 60),
    (4, "flow/iterate agreement", 10),
    (5, "one-parameter law", 30),
    (6, "iterates of order l^n", 30),
    (7, "field consistency", 30),
    (8, "Poincare/Cartan", 10),
    (9, "regulator cocycle", 300),
    (10, "regulator invariances", 120),
    (11, "decomposable vanishing", 300),
    (12, "symplectic equality", 60),
    (13, "Poisson structure", 30),
    (14, "volume audits", 300),
];

pub fn suite_ids(suite: &str) -> Option<Vec<u32>> {
    Some(match suite {
        "padic" => vec![1],
        "chains" => vec![2, 3],
        "flows" => vec![4, 5, 6, 7, 8],
        "regulator" => vec![9, 10, 11],
        "symplectic" => vec![12, 13],
        "volume" => vec![14],
        "all" => (1..=14).collect(),
        _ => return None,
    })
}

/// (passed, detail) or an error that counts as a failure.
type Check = std::result::Result<(bool, String), String>;

fn err<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

/// Runs one criterion.
pub fn run_criterion(id: u32, seed: u64) -> Outcome {
    let (_, name, secs) = CRITERIA[(id - 1) as usize];
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (id as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let start = Instant::now();
    let res = match id {
        1 => c1_legendre(),
        2 => c2_homotopy(),
        3 => c3_composition(),
        4 => c4_iterates(),
        5 => c5_one_parameter(&mut rng),
        6 => c6_powers(&mut rng),
        7 => c7_field(&mut rng),
        8 => c8_cartan(&mut rng),
        9 => c9_cocycle(&mut rng),
        10 => c10_invariance(&mut rng),
        11 => c11_decomposable(),
        12 => c12_symplectic(),
        13 => c13_poisson(&mut rng),
        14 => c14_volume(),
        _ => Err(format!("no criterion {id}")),
    };
    let elapsed = start.elapsed();
    let budget = Duration::from_secs(secs);
    let (status, detail) = match res {
        Ok((true, d)) if elapsed <= budget => (Status::Pass, d),
        Ok((true, d)) => (Status::Fail, format!("{d}; over the {secs} s budget")),
        Ok((false, d)) => (Status::Fail, d),
        Err(e) => (Status::Fail, format!("error: {e}")),
    };
    Outcome { id, name, status, detail, elapsed, budget }
}

pub struct Report {
    pub suite: String,
    pub seed: u64,
    pub timing: bool,
    pub outcomes: Vec<Outcome>,
}

impl Report {
    pub fn status(&self) -> Status {
        if self.outcomes.iter().any(|o| o.status == Status::Fail) {
            Status::Fail
        } else if self.outcomes.iter().any(|o| o.status == Status::Incomplete) {
            Status::Incomplete
        } else {
            Status::Pass
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.status() {
            Status::Pass => error::OK,
            Status::Incomplete => error::PRECISION,
            Status::Fail => error::MATH,
        }
    }

    pub fn to_json(&self) -> Value {
        let crit: Vec<Value> = self
            .outcomes
            .iter()
            .map(|o| {
                let mut v = json!({"id": o.id, "name": o.name, "status": o.status.label(), "detail": o.detail, "budget_s": o.budget.as_secs()});
                if self.timing {
                    v["elapsed_ms"] = json!(o.elapsed.as_millis() as u64);
                }
                v
            })
            .collect();
        json!({"suite": self.suite, "seed": self.seed, "status": self.status().label(), "criteria": crit})
    }
}

/// Runs a suite in criterion order. Once `budget` seconds have passed the
/// remaining criteria are reported incomplete.
pub fn run_suite(suite: &str, budget: Option<f64>, seed: u64, timing: bool) -> Result<Report> {
    let ids = suite_ids(suite).ok_or_else(|| CliError::validation(format!("unknown suite {suite}")))?;
    let start = Instant::now();
    let mut outcomes = Vec::new();
    for id in ids {
        let over = budget.is_some_and(|b| start.elapsed().as_secs_f64() > b);
        if over {
            let (_, name, secs) = CRITERIA[(id - 1) as usize];
            outcomes.push(Outcome {
                id,
                name,
                status: Status::Incomplete,
                detail: "BudgetExceeded".into(),
                elapsed: Duration::ZERO,
                budget: Duration::from_secs(secs),
            });
            continue;
        }
        outcomes.push(run_criterion(id, seed));
    }
    if let Some(b) = budget {
        if start.elapsed().as_secs_f64() > b {
            if let Some(last) = outcomes.iter_mut().rev().find(|o| o.status == Status::Pass) {
                last.status = Status::Incomplete;
                last.detail = format!("{}; BudgetExceeded", last.detail);
            }
        }
    }
    Ok(Report { suite: suite.to_string(), seed, timing, outcomes })
}

// ---- shared constructions ----

fn ring(ell: u64, prec: u32) -> Ring {
    Ring::from_spec(&RingSpec::new(ell, prec)).expect("valid ring")
}

fn mat(r: &Ring, rows: &[&[i64]]) -> Mat {
    Mat::from_rows(r, &rows.iter().map(|x| x.to_vec()).collect::<Vec<_>>()).expect("square rows")
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn series(r: &Ring, m: usize, n: i64, terms: &[(&[u32], i64)]) -> TruncSeries {
    TruncSeries::from_int_terms(r, m, n, terms).expect("valid terms")
}

/// Random integer series in m variables with terms of degree lo..=hi.
fn random_series(r: &Ring, rng: &mut ChaCha8Rng, m: usize, n: i64, lo: u32, hi: u32) -> TruncSeries {
    let mut terms: Vec<(Vec<u32>, i64)> = Vec::new();
    for _ in 0..6 {
        let deg = rng.gen_range(lo..=hi);
        let mut e = vec![0u32; m];
        for _ in 0..deg {
            e[rng.gen_range(0..m)] += 1;
        }
        terms.push((e, rng.gen_range(-5..=5)));
    }
    let refs: Vec<(&[u32], i64)> = terms.iter().map(|(e, c)| (&e[..], *c)).collect();
    series(r, m, n, &refs)
}

/// (Z/3)² with a = 1, b = 3.
const A: u32 = 1;
const B: u32 = 3;

fn c3(r: &Ring) -> Mat {
    mat(r, &[&[0, -1], &[1, -1]])
}

fn brute_factorial_valuation(ell: u64, a: u64) -> u64 {
    (1..=a)
        .map(|mut k| {
            let mut v = 0;
            while k % ell == 0 {
                k /= ell;
                v += 1;
            }
            v
        })
        .sum()
}

// ---- criteria ----

fn c1_legendre() -> Check {
    let mut n = 0;
    for ell in [3u64, 5, 7] {
        for a in 0..=500u64 {
            let (v, w) = (factorial_valuation(ell, a), brute_factorial_valuation(ell, a));
            if v != w {
                return Ok((false, format!("l = {ell}, a = {a}: {v} != {w}")));
            }
            n += 1;
        }
    }
    Ok((true, format!("{n} values exact")))
}

fn c2_homotopy() -> Check {
    let m = Modulus::new(3, 2).map_err(err)?;
    let mut checked = 0;
    for g in [FiniteGroup::symmetric(3).map_err(err)?, FiniteGroup::abelian(&[3, 3]).map_err(err)?] {
        for n in 0..=3 {
            for t in tuples(g.order(), n) {
                let c = BarChain::basis(&t, m);
                for h in g.elements() {
                    let lhs = inn(&c, h, &g).sub(&c).map_err(err)?;
                    let mut rhs = boundary(&homotopy(&c, h, &g), &g);
                    if n > 0 {
                        rhs = rhs.add(&homotopy(&boundary(&c, &g), h, &g)).map_err(err)?;
                    }
                    if lhs != rhs {
                        return Ok((false, format!("tuple {t:?}, h = {h}")));
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok((true, format!("{checked} (chain, h) pairs exact")))
}

fn c3_composition() -> Check {
    let g = FiniteGroup::symmetric(3).map_err(err)?;
    let m = Modulus::new(3, 2).map_err(err)?;
    let cache = SolverCache::new(&g);
    // a spanning set of cycles in degrees 0, 1, 2: all 0- and 1-chains, all
    // boundaries of basis 3-chains, and the Tor cycle 3·Σ[c|c^i]
    let mut cycles: Vec<BarChain> = Vec::new();
    for n in 0..=1 {
        cycles.extend(tuples(g.order(), n).map(|t| BarChain::basis(&t, m)));
    }
    for t in tuples(g.order(), 3) {
        let b = boundary(&BarChain::basis(&t, m), &g);
        if !b.is_zero() {
            cycles.push(b);
        }
    }
    let order3 = g.elements().find(|&x| x != 0 && g.pow(x, 3) == 0).ok_or("no element of order 3")?;
    let c2 = g.mul(order3, order3);
    cycles.push(BarChain::from_terms(2, m, &[(&[order3, 0], 3), (&[order3, order3], 3), (&[order3, c2], 3)]).map_err(err)?);
    let mut solved = 0;
    for c in &cycles {
        for h in g.elements() {
            for h2 in g.elements() {
                let d = homotopy(c, g.mul(h, h2), &g)
                    .sub(&homotopy(&inn(c, h2, &g), h, &g))
                    .and_then(|x| x.sub(&homotopy(c, h2, &g)))
                    .map_err(err)?;
                match cache.solve_boundary(&d) {
                    Ok(w) if boundary(&w, &g) == d => solved += 1,
                    Ok(_) => return Ok((false, "solver returned a wrong preimage".into())),
                    Err(e) => return Ok((false, format!("h = {h}, h' = {h2}: {e:?}"))),
                }
            }
        }
    }
    Ok((true, format!("{solved} defects certified boundaries over {} cycles", cycles.len())))
}

fn x_plus_x3(r: &Ring, n: i64) -> SeriesMap {
    SeriesMap::new(vec![series(r, 1, n, &[(&[1], 1), (&[3], 1)])]).expect("map")
}

fn c4_iterates() -> Check {
    let r = ring(3, 20);
    let psi = x_plus_x3(&r, 8);
    let cert = certify(&psi, &q(1, 1)).map_err(err)?;
    for k in [2u64, 9, 243] {
        let a = interpolate_iterate(&psi, &Time::int(k as i64), &cert).map_err(err)?;
        let b = psi.iterate(k).map_err(err)?;
        if !a.agrees_with(&b) {
            return Ok((false, format!("t = {k} disagrees")));
        }
    }
    Ok((true, "t = 2, 9, 243 agree in all certified digits".into()))
}

/// x + 3b·x + Σ a_k x^k with random b, a_k.
fn random_near_id(r: &Ring, rng: &mut ChaCha8Rng, n: i64) -> SeriesMap {
    let mut t: Vec<(Vec<u32>, i64)> = vec![(vec![1], 1 + 3 * rng.gen_range(-3..=3))];
    for k in 2..=rng.gen_range(2..=5u32) {
        t.push((vec![k], rng.gen_range(-4..=4)));
    }
    let refs: Vec<(&[u32], i64)> = t.iter().map(|(e, c)| (&e[..], *c)).collect();
    SeriesMap::new(vec![series(r, 1, n, &refs)]).expect("map")
}

fn c5_one_parameter(rng: &mut ChaCha8Rng) -> Check {
    let r = ring(3, 30);
    let maps = [x_plus_x3(&r, 8), random_near_id(&r, rng, 8)];
    let dens = [1i64, 2, 4, 5, 7, 8];
    for i in 0..20 {
        let psi = &maps[i % 2];
        let cert = certify(psi, &q(1, 1)).map_err(err)?;
        let u = q(rng.gen_range(-30..=30), *dens.choose(rng).unwrap());
        let v = q(rng.gen_range(-30..=30), *dens.choose(rng).unwrap());
        let s = interpolate_iterate(psi, &Time::Rational(&u + &v), &cert).map_err(err)?;
        let pu = interpolate_iterate(psi, &Time::Rational(u.clone()), &cert).map_err(err)?;
        let pv = interpolate_iterate(psi, &Time::Rational(v.clone()), &cert).map_err(err)?;
        if !s.agrees_with(&pu.compose(&pv).map_err(err)?) {
            return Ok((false, format!("t = {u}, t' = {v}")));
        }
    }
    Ok((true, "20 pairs (t, t') agree in certified digits".into()))
}

fn c6_powers(rng: &mut ChaCha8Rng) -> Check {
    let r = ring(3, 30);
    let mut orders = Vec::new();
    for _ in 0..3 {
        // two variables, ψ ≡ id mod 𝔪²
        let f = TruncSeries::var(&r, 2, 10, 0).add(&random_series(&r, rng, 2, 10, 2, 4)).map_err(err)?;
        let g = TruncSeries::var(&r, 2, 10, 1).add(&random_series(&r, rng, 2, 10, 2, 4)).map_err(err)?;
        let lin = series(&r, 2, 10, &[(&[1, 0], 3 * rng.gen_range(-2..=2)), (&[0, 1], 3 * rng.gen_range(-2..=2))]);
        let psi = SeriesMap::new(vec![f.add(&lin).map_err(err)?, g]).map_err(err)?;
        let mut p = psi.clone();
        let mut got = Vec::new();
        for n in 0..=4 {
            let o = p.congruence_order();
            if o < n + 2 {
                return Ok((false, format!("ψ^(3^{n}) ≡ id only mod 𝔪^{o}")));
            }
            got.push(o);
            p = p.iterate(3).map_err(err)?;
        }
        orders.push(got);
    }
    Ok((true, format!("congruence orders {orders:?}")))
}

fn c7_field(rng: &mut ChaCha8Rng) -> Check {
    let r = ring(3, 36);
    for i in 0..3 {
        let psi = if i == 0 { x_plus_x3(&r, 8) } else { random_near_id(&r, rng, 8) };
        let x = vector_field_log(&psi).map_err(err)?;
        let p = iterate_tpoly(&psi, x.n()).map_err(err)?;
        let lhs = p[0].deriv_t();
        let rhs = compose_into(x.comp(0), &p).map_err(err)?;
        if !lhs.agrees_with(&rhs) {
            return Ok((false, format!("map {i}: dψ^t/dt differs from X(ψ^t)")));
        }
        let h = flow_from_field(&x, &q(1, 1)).map_err(err)?;
        if !h.at(&Time::int(1)).map_err(err)?.agrees_with(&psi) {
            return Ok((false, format!("map {i}: flow at t = 1 differs from ψ")));
        }
    }
    Ok((true, "3 maps: t-coefficients and time-1 flow agree".into()))
}

fn c8_cartan(rng: &mut ChaCha8Rng) -> Check {
    let r = ring(3, 14);
    let n = 8;
    for i in 0..10 {
        let f = random_series(&r, rng, 2, n, 1, 5);
        let df = exterior_d(&f);
        let back = antiderivative(&df).map_err(err)?;
        if !back.agrees_with(&f) || !exterior_d(&back).agrees_with(&df) {
            return Ok((false, format!("instance {i}: Poincaré round trip")));
        }
        let x = VectorField::new(vec![random_series(&r, rng, 2, n, 0, 3), random_series(&r, rng, 2, n, 0, 3)]).map_err(err)?;
        // ω = u dx₁∧dx₂: L_Xω = (X(u) + u·div X) dx₁∧dx₂
        let u = random_series(&r, rng, 2, n, 0, 3);
        let w = DiffForm::from_components(&r, 2, 2, vec![(vec![0, 1], u.clone())]).map_err(err)?;
        let div = x.comp(0).derivative(0).add(&x.comp(1).derivative(1)).map_err(err)?;
        let coeff = x.apply(&u).map_err(err)?.add(&u.mul(&div).map_err(err)?).map_err(err)?;
        let want = DiffForm::from_components(&r, 2, 2, vec![(vec![0, 1], coeff)]).map_err(err)?;
        let l = lie_derivative(&x, &w).map_err(err)?;
        let cartan = exterior_d_any(&contract(&x, &w).map_err(err)?);
        if !l.agrees_with(&want) || !cartan.agrees_with(&want) {
            return Ok((false, format!("instance {i}: L_X of a 2-form")));
        }
        // ω = dg: L_X dg = d(X(g))
        let g = random_series(&r, rng, 2, n, 1, 4);
        let dg = exterior_d(&g);
        let want = exterior_d(&x.apply(&g).map_err(err)?);
        let l = lie_derivative(&x, &dg).map_err(err)?;
        if !l.agrees_with(&want) || !exterior_d_any(&contract(&x, &dg).map_err(err)?).agrees_with(&want) {
            return Ok((false, format!("instance {i}: L_X of an exact 1-form")));
        }
    }
    Ok((true, "10 round trips and 20 Lie derivatives agree at truncation".into()))
}

fn random_k1(r: &Ring, rng: &mut ChaCha8Rng, d: usize) -> Mat {
    let mut m = Mat::identity(r, d);
    for i in 0..d {
        for j in 0..d {
            let y = r.from_i64(3 * rng.gen_range(-4..=4));
            m.set(i, j, r.add(m.get(i, j), y));
        }
    }
    m
}

fn random_gl(r: &Ring, rng: &mut ChaCha8Rng, d: usize) -> Mat {
    loop {
        let mut m = Mat::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                m.set(i, j, r.from_i64(rng.gen_range(-40..=40)));
            }
        }
        if m.is_invertible(r) {
            return m;
        }
    }
}

fn c9_cocycle(rng: &mut ChaCha8Rng) -> Check {
    let r = ring(3, 6);
    let cutoff = min_cutoff(3, 1, 3, 1, 4);
    let mut worst = EXACT;
    for i in 0..10 {
        let gs: Vec<Mat> = (0..5).map(|_| random_k1(&r, rng, 2)).collect();
        let mut acc = PadicScalar::zero_to(&r, EXACT);
        let mut cert = EXACT;
        for k in 0..5 {
            let face: Vec<Mat> = gs.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, g)| g.clone()).collect();
            let v = psi_transfer(&r, &face, 3, cutoff).map_err(err)?;
            cert = cert.min(v.certified_abs);
            acc = if k % 2 == 0 { acc.add(&v.value) } else { acc.sub(&v.value) };
        }
        worst = worst.min(cert);
        if cert < 4 {
            return Ok((false, format!("tuple {i}: certified only to 3^-{cert}")));
        }
        if !acc.truncate(cert).is_zero() {
            return Ok((false, format!("tuple {i}: residual {} above 3^-{cert}", acc.to_wire())));
        }
    }
    Ok((true, format!("10 tuples, residual 0 mod 3^{worst}, cutoff {cutoff}")))
}

fn perm_odd(p: &[usize]) -> bool {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            inv += usize::from(p[i] > p[j]);
        }
    }
    inv % 2 == 1
}

fn c10_invariance(rng: &mut ChaCha8Rng) -> Check {
    let r = ring(3, 6);
    let c = min_cutoff(3, 1, 3, 1, 4);
    for i in 0..5 {
        let gs: Vec<Mat> = (0..4).map(|_| random_k1(&r, rng, 2)).collect();
        let h = random_k1(&r, rng, 2);
        let base = phi_tilde(&r, &gs, 3, c).map_err(err)?;
        let left: Vec<Mat> = gs.iter().map(|g| h.mul(&r, g)).collect::<std::result::Result<_, _>>().map_err(err)?;
        let right: Vec<Mat> = gs.iter().map(|g| g.mul(&r, &h)).collect::<std::result::Result<_, _>>().map_err(err)?;
        let x = random_gl(&r, rng, 2);
        let xi = x.inv(&r).map_err(err)?;
        let conj: Vec<Mat> = gs.iter().map(|g| x.mul(&r, g).and_then(|y| y.mul(&r, &xi))).collect::<std::result::Result<_, _>>().map_err(err)?;
        let mut p: Vec<usize> = (0..4).collect();
        p.shuffle(rng);
        let perm: Vec<Mat> = p.iter().map(|&k| gs[k].clone()).collect();
        let want_perm = if perm_odd(&p) { base.value.neg() } else { base.value.clone() };
        let checks = [
            ("left", phi_tilde(&r, &left, 3, c).map_err(err)?.value, base.value.clone()),
            ("right", phi_tilde(&r, &right, 3, c).map_err(err)?.value, base.value.clone()),
            ("conjugation", phi_tilde(&r, &conj, 3, c).map_err(err)?.value, base.value.clone()),
            ("alternating", phi_tilde(&r, &perm, 3, c).map_err(err)?.value, want_perm),
        ];
        for (name, got, want) in checks {
            if !got.agrees_with(&want) {
                return Ok((false, format!("tuple {i}: {name} invariance fails")));
            }
        }
    }
    Ok((true, "5 tuples: left, right, conjugation and permutation checks agree".into()))
}

/// Ψ₃(F_h([a|b] − [b|a])) for commuting a, b and h in their centralizer.
fn decomposable(r: &Ring, a: &Mat, b: &Mat, h: &Mat, cutoff: u32) -> std::result::Result<regulator::RegulatorValue, String> {
    let m = Modulus::new(r.ell(), r.prec()).map_err(err)?;
    let mg = MatrixGroup::new(r, a.rows);
    let (ia, ib, ih) = (mg.intern(a).map_err(err)?, mg.intern(b).map_err(err)?, mg.intern(h).map_err(err)?);
    let z = BarChain::from_terms(2, m, &[(&[ia, ib], 1), (&[ib, ia], -1)]).map_err(err)?;
    if !boundary(&z, &mg).is_zero() {
        return Err("a and b do not commute".into());
    }
    evaluate_chain(&homotopy(&z, ih, &mg), &mg, cutoff).map_err(err)
}

fn c11_decomposable() -> Check {
    let r = ring(3, 5);
    let cutoff = min_cutoff(3, 1, 3, 1, 4);
    let id2 = Mat::identity(&r, 2);
    let id3 = Mat::identity(&r, 3);
    let pw = |m: &Mat, k: u64| m.pow(&r, k).map_err(err);
    let lin = |m: &Mat, x: i64, y: i64, id: &Mat| -> std::result::Result<Mat, String> {
        m.scale(&r, r.from_i64(x)).add(&r, &id.scale(&r, r.from_i64(y))).map_err(err)
    };
    let j2 = mat(&r, &[&[2, 1], &[0, 2]]);
    let k2 = mat(&r, &[&[4, 3], &[-3, 7]]);
    let t2 = mat(&r, &[&[2, 0], &[0, 5]]);
    let s2 = mat(&r, &[&[4, 0], &[0, 10]]);
    let n3 = mat(&r, &[&[1, 3, 0], &[0, 1, 3], &[0, 0, 1]]);
    let m3 = mat(&r, &[&[4, 3, -6], &[3, 1, 9], &[0, 3, 7]]);
    let configs: Vec<(&str, Mat, Mat, Mat)> = vec![
        ("GL2 Jordan block", j2.clone(), pw(&j2, 2)?, pw(&j2, 4)?),
        ("GL2 K1, h = 2 + 3a", k2.clone(), pw(&k2, 5)?, lin(&k2, 3, -1, &id2)?),
        ("GL2 split torus", t2.clone(), s2, mat(&r, &[&[7, 0], &[0, 2]])),
        ("GL3 K1 unipotent", n3.clone(), pw(&n3, 2)?.add(&r, &lin(&n3, 9, -9, &id3)?).map_err(err)?, lin(&n3, 3, -2, &id3)?),
        ("GL3 K1 generic", m3.clone(), pw(&m3, 3)?, lin(&m3, 3, -2, &id3)?),
    ];
    let mut details = Vec::new();
    for (name, a, b, h) in configs {
        let v = decomposable(&r, &a, &b, &h, cutoff)?;
        if v.certified_abs < 2 {
            return Ok((false, format!("{name}: certified only to 3^-{}", v.certified_abs)));
        }
        if !v.is_certified_zero() {
            return Ok((false, format!("{name}: {} not below 3^-{}", v.value.to_wire(), v.certified_abs)));
        }
        details.push(format!("{name} 0 mod 3^{}", v.certified_abs));
    }
    Ok((true, details.join(", ")))
}

/// ρ₀(a) = C, ρ₀(b) = 1 over Z/81 with cocycles c(a) = Ad(a)Z − Z, c(b) = λ·27(2C + 1).
fn z33_deformations() -> std::result::Result<(FiniteGroup, MatrixRep, Vec<AdCocycle>), String> {
    let r = ring(3, 4);
    let g = FiniteGroup::abelian(&[3, 3]).map_err(err)?;
    let rep = MatrixRep::from_generators(&g, &r, &[A, B], &[c3(&r), Mat::identity(&r, 2)]).map_err(err)?;
    let y = mat(&r, &[&[27, -54], &[54, -27]]);
    let mut out = Vec::new();
    for (x0, x1, x2) in [(1i64, 0i64, 0i64), (0, 1, 0), (2, 1, 5), (1, 1, -1), (4, -7, 2)] {
        let z = mat(&r, &[&[x0, x1], &[x2, -x0]]);
        let x = AdCocycle::coboundary(&g, &rep, &z).map_err(err)?.value(A).clone();
        for lam in [0i64, 1, 2] {
            if let Ok(c) = AdCocycle::from_generators(&g, &rep, &[A, B], &[x.clone(), y.scale(&r, r.from_i64(lam))]) {
                out.push(c);
            }
        }
    }
    Ok((g, rep, out))
}

fn c12_symplectic() -> Check {
    let (g, rep, cs) = z33_deformations()?;
    let m = Modulus::new(3, 4).map_err(err)?;
    let comm = BarChain::from_terms(2, m, &[(&[A, B], 1), (&[B, A], -1)]).map_err(err)?;
    let a2 = g.mul(A, A);
    let tor = BarChain::from_terms(2, m, &[(&[A, 0], 27), (&[A, A], 27), (&[A, a2], 27)]).map_err(err)?;
    let mut n = 0;
    let mut nonzero_cochains = 0;
    for c1 in &cs {
        for c2 in &cs {
            for z in [&comm, &tor] {
                let rep_ = omega_vs_cup(&g, &rep, c1, c2, z).map_err(err)?;
                if !rep_.equal || !rep_.cochain_equal {
                    return Ok((false, format!("pair {n}: omega {} vs pairing {} - {}", rep_.omega, rep_.pairing, rep_.pairing_swapped)));
                }
                n += 1;
            }
            let data = symplectic_k2::DeformationCocycle::new(&g, &rep, vec![c1.clone(), c2.clone()]).map_err(err)?;
            let any = g.elements().any(|a| g.elements().any(|b| symplectic_k2::kappa(&data, a, b).map(|k| !k.is_zero()).unwrap_or(false)));
            nonzero_cochains += usize::from(any);
        }
    }
    Ok((true, format!("{} cocycles, {n} (pair, cycle) cases equal on cycles and cochains; {nonzero_cochains} pairs with nonzero cochains", cs.len())))
}

fn c13_poisson(rng: &mut ChaCha8Rng) -> Check {
    let r = ring(3, 10);
    let n = 8;
    for i in 0..10 {
        let (a, b) = (rng.gen_range(-3..=3), rng.gen_range(-3..=3));
        let f1 = series(&r, 2, n, &[(&[0, 0], 1), (&[1, 0], a)]);
        let g1 = series(&r, 2, n, &[(&[0, 0], 1), (&[0, 1], b)]);
        let area = DiffForm::from_components(&r, 2, 2, vec![(vec![0, 1], TruncSeries::one(&r, 2, n))]).map_err(err)?;
        let w = area.add(&dlog_symbols(&SymbolList::new(vec![(f1, g1, 3)]).map_err(err)?, &r, 2, n).map_err(err)?).map_err(err)?;
        let f = random_series(&r, rng, 2, n, 1, 3);
        let g = random_series(&r, rng, 2, n, 1, 3);
        let k = random_series(&r, rng, 2, n, 1, 3);
        let pb = |x: &TruncSeries, y: &TruncSeries| poisson_bracket(x, y, &w).map_err(err);
        let anti = pb(&f, &g)?.add(&pb(&g, &f)?).map_err(err)?;
        let leib_l = pb(&f, &g.mul(&k).map_err(err)?)?;
        let leib_r = pb(&f, &g)?.mul(&k).map_err(err)?.add(&g.mul(&pb(&f, &k)?).map_err(err)?).map_err(err)?;
        let jac = pb(&f, &pb(&g, &k)?)?.add(&pb(&g, &pb(&k, &f)?)?).map_err(err)?.add(&pb(&k, &pb(&f, &g)?)?).map_err(err)?;
        if !anti.is_zero() {
            return Ok((false, format!("instance {i}: antisymmetry")));
        }
        if !leib_l.agrees_with(&leib_r) {
            return Ok((false, format!("instance {i}: Leibniz")));
        }
        if !jac.agrees_with(&TruncSeries::zero(&r, 2, jac.n())) {
            return Ok((false, format!("instance {i}: Jacobi")));
        }
        // dlog{f, g} is closed, so ω stays closed
        if !exterior_d_any(&w).is_zero() || dlog(&series(&r, 2, n, &[(&[0, 0], 1), (&[1, 1], 3)])).is_err() {
            return Ok((false, format!("instance {i}: ω not closed")));
        }
    }
    Ok((true, "10 forms: antisymmetry, Leibniz and Jacobi hold at truncation".into()))
}

/// The (Z/3)²-swap setup over Z/3^P: ρ(a) = C, ρ(b) = C², c = [a|b] − [b|a],
/// with the swap (h = s, a = −1) and the inversion (h = s, a = 1).
pub fn swap_setup(prec: u32) -> std::result::Result<VolumeSetup, String> {
    let r = ring(3, prec);
    let g = FiniteGroup::abelian(&[3, 3]).map_err(err)?;
    let m = Modulus::new(3, prec).map_err(err)?;
    let c = c3(&r);
    let rep = MatrixRep::from_generators(&g, &r, &[A, B], &[c.clone(), c.pow(&r, 2).map_err(err)?]).map_err(err)?;
    let cycle = BarChain::from_terms(2, m, &[(&[A, B], 1), (&[B, A], -1)]).map_err(err)?;
    let s = mat(&r, &[&[0, 1], &[1, 0]]);
    let swap = bar_chains::GroupAutomorphism::from_generator_images(&g, &[A, B], &[B, A]).map_err(err)?;
    let (a2, b2) = (g.mul(A, A), g.mul(B, B));
    let inv = bar_chains::GroupAutomorphism::from_generator_images(&g, &[A, B], &[a2, b2]).map_err(err)?;
    let id = volume::RingAutomorphism::identity();
    let data = vec![ConjugationDatum::new(swap, s.clone(), -1, id.clone()), ConjugationDatum::new(inv, s, 1, id)];
    VolumeSetup::new(g, rep, cycle, data).map_err(err)
}

fn c14_volume() -> Check {
    let prec = 5;
    let s = swap_setup(prec)?;
    let r = s.ring().clone();
    let v = Volume::new(&s, min_cutoff(3, 1, 3, 1, prec as i64));
    let amb = v.ambiguity().map_err(err)?;
    let mut lines: Vec<AuditLine> = Vec::new();
    let c = c3(&r);
    let one_plus_3c = Mat::identity(&r, 2).add(&r, &c.scale(&r, r.from_i64(3))).map_err(err)?;
    for z in [one_plus_3c, c.clone(), Mat::identity(&r, 2).scale(&r, r.from_i64(4))] {
        for w in 0..2 {
            lines.push(h_independence(&v, w, &z).map_err(err)?);
        }
    }
    for delta in [A, B, s.group.mul(A, B)] {
        for w in 0..2 {
            lines.push(lift_independence(&v, w, delta).map_err(err)?);
        }
    }
    lines.extend(cocycle_audit(&v, &[(0, 0), (0, 1), (1, 0), (1, 1)]).map_err(err)?);
    let all: Vec<u32> = s.group.elements().collect();
    lines.extend(restriction_audit(&v, &all, &s.cycle, 1).map_err(err)?);
    let ab = s.group.mul(A, B);
    let diag = vec![0, ab, s.group.mul(ab, ab)];
    lines.extend(restriction_audit(&v, &diag, &BarChain::zero(2, s.modulus()), 3).map_err(err)?);
    if let Some(bad) = lines.iter().find(|l| !l.pass) {
        return Ok((false, format!("{}: residual {}", bad.name, bad.residual.value.to_wire())));
    }
    let cert = lines.iter().map(|l| l.residual.certified_abs).min().unwrap_or(EXACT);
    let zero = lines.iter().filter(|l| l.residual.is_certified_zero()).count();
    Ok((
        true,
        format!(
            "{} audits within 3^-{cert} ({zero} residuals certified zero); H3 ambiguity of order {} ({} generators)",
            lines.len(),
            amb.h3_order.map(|x| x.to_string()).unwrap_or("?".into()),
            amb.cycles.len()
        ),
    ))
}
