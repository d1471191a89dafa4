//! One function per subcommand; each returns the JSON result.

use crate::args::*;
use crate::ctx::Ctx;
use crate::error::{CliError, Result};
use bar_chains::{boundary, homotopy, AdCocycle, BarChain, ChainJson, FiniteGroup, GroupSpec, MatrixGroup, MatrixRep, Modulus, SolverCache};
use flows::{certify, flow_from_field, hamiltonian_potential, interpolate_iterate, vector_field_log, SeriesMap, Time};
use padic_core::{fmt_rational, parse_rational, Mat, PadicScalar, Ring, RingSpec};
use regulator::{min_cutoff, phi_tilde, psi_transfer, RegulatorValue};
use serde::Deserialize;
use serde_json::{json, Value};
use series_ring::json::*;
use series_ring::{antiderivative, dlog, exterior_d_any, VectorField};
use symplectic_k2::{omega_vs_cup, poisson_bracket, tr_alt, VMatrix};
use volume::{cocycle_audit, restriction_audit, SetupJson, Volume};

type Rows = Vec<Vec<String>>;

/// Default certified target for regulator values, in units of 𝔩.
const REG_TARGET: i64 = 4;

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn rational(s: &str) -> Result<num_rational::BigRational> {
    parse_rational(s).ok_or_else(|| CliError::validation(format!("not a rational: {s}")))
}

fn scalar_arg(r: &Ring, s: &str) -> Result<PadicScalar> {
    if let Some(q) = parse_rational(s) {
        return Ok(PadicScalar::from_rational(r, &q));
    }
    if s.contains("w:") {
        return Ok(PadicScalar::from_wire(r, s)?);
    }
    Ok(PadicScalar::from_elt(r, r.parse(s)?))
}

fn reg_json(ctx: &Ctx, v: &RegulatorValue) -> Value {
    let j = v.to_json();
    ctx.note_certified(j.certified_error.clone());
    to_value(&j)
}

pub fn padic(ctx: &Ctx, cmd: &PadicCmd) -> Result<Value> {
    let check_ell = |ell: u64| {
        if ell < 3 || !padic_core::is_prime(ell) {
            return Err(CliError::validation(format!("l = {ell} must be an odd prime")));
        }
        Ok(())
    };
    Ok(match cmd {
        PadicCmd::Factval { ell, a } => {
            check_ell(*ell)?;
            json!({"v": padic_core::factorial_valuation(*ell, *a)})
        }
        PadicCmd::Digits { ell, a } => {
            check_ell(*ell)?;
            let (s, d) = padic_core::digit_stats(*ell, *a);
            json!({"digit_sum": s, "digit_count": d})
        }
        PadicCmd::Multinomial { ell, parts } => {
            check_ell(*ell)?;
            if parts.is_empty() {
                return Err(CliError::validation("--parts needs at least one entry"));
            }
            json!({"v": padic_core::multinomial_valuation(*ell, parts)})
        }
        PadicCmd::Scalar { ring, x } => {
            let r = ctx.ring(ring.ell, &ring.eisenstein)?;
            let s = scalar_arg(&r, x)?;
            json!({"value": s.to_wire(), "valuation": fmt_rational(&s.valuation())})
        }
        PadicCmd::Log { ring, x } => {
            let r = ctx.ring(ring.ell, &ring.eisenstein)?;
            let v = padic_core::padic_log(&scalar_arg(&r, x)?, None)?;
            json!({"value": v.to_wire()})
        }
        PadicCmd::Teichmuller { ring, u } => {
            let r = ctx.ring(ring.ell, &ring.eisenstein)?;
            json!({"value": padic_core::teichmuller(&r, *u)?.to_wire()})
        }
        PadicCmd::Hensel { ring, d, u, residue } => {
            let r = ctx.ring(ring.ell, &ring.eisenstein)?;
            json!({"value": padic_core::hensel_root(*d, &scalar_arg(&r, u)?, *residue)?.to_wire()})
        }
    })
}

fn read_series(ctx: &Ctx, path: &str) -> Result<series_ring::TruncSeries> {
    let j: SeriesJson = ctx.read_json(path)?;
    let f = series_from_json(&j)?;
    ctx.note_ring(f.ring());
    Ok(f)
}

fn read_form(ctx: &Ctx, path: &str) -> Result<series_ring::DiffForm> {
    let j: FormJson = ctx.read_json(path)?;
    let w = form_from_json(&j)?;
    ctx.note_ring(w.ring());
    Ok(w)
}

fn read_field(ctx: &Ctx, path: &str) -> Result<VectorField> {
    let j: FieldJson = ctx.read_json(path)?;
    let x = field_from_json(&j)?;
    ctx.note_ring(x.ring());
    Ok(x)
}

/// Maps use the vector-field wire format: one series per coordinate.
fn read_map(ctx: &Ctx, path: &str) -> Result<SeriesMap> {
    Ok(SeriesMap::new(read_field(ctx, path)?.comps().to_vec())?)
}

fn map_json(psi: &SeriesMap) -> Result<Value> {
    Ok(to_value(&field_to_json(&VectorField::new(psi.comps().to_vec())?)))
}

pub fn series(ctx: &Ctx, cmd: &SeriesCmd) -> Result<Value> {
    Ok(match cmd {
        SeriesCmd::Mul { f, g } => {
            let (f, g) = (read_series(ctx, f)?, read_series(ctx, g)?);
            to_value(&series_to_json(&f.mul(&g)?))
        }
        SeriesCmd::Inv { f } => to_value(&series_to_json(&read_series(ctx, f)?.inv()?)),
        SeriesCmd::D { form } => to_value(&form_to_json(&exterior_d_any(&read_form(ctx, form)?))),
        SeriesCmd::Antiderivative { form } => to_value(&series_to_json(&antiderivative(&read_form(ctx, form)?)?)),
        SeriesCmd::Dlog { f } => to_value(&form_to_json(&dlog(&read_series(ctx, f)?)?)),
        SeriesCmd::GaussNorm { f, a } => {
            let g = read_series(ctx, f)?.gauss_norm(&rational(a)?)?;
            json!({
                "log_norm": g.log_norm.as_ref().map(fmt_rational),
                "radius_exponent": fmt_rational(&g.radius_exponent),
                "tail_log_norm": fmt_rational(&g.tail_log_norm),
            })
        }
    })
}

fn time_arg(r: &Ring, t: &str) -> Result<Time> {
    if let Some(q) = parse_rational(t) {
        return Ok(Time::Rational(q));
    }
    Ok(Time::Scalar(PadicScalar::from_wire(r, t)?))
}

pub fn flow(ctx: &Ctx, cmd: &FlowCmd) -> Result<Value> {
    Ok(match cmd {
        FlowCmd::Interpolate { psi, t, a } => {
            let psi = read_map(ctx, psi)?;
            let cert = certify(&psi, &rational(a)?)?;
            let out = interpolate_iterate(&psi, &time_arg(psi.ring(), t)?, &cert)?;
            json!({"map": map_json(&out)?, "certificate": to_value(&cert.to_json())})
        }
        FlowCmd::Field { psi } => to_value(&field_to_json(&vector_field_log(&read_map(ctx, psi)?)?)),
        FlowCmd::Potential { field, omega } => {
            let x = read_field(ctx, field)?;
            let w = read_form(ctx, omega)?;
            to_value(&series_to_json(&hamiltonian_potential(&x, &w)?))
        }
        FlowCmd::Flow { field, t, a } => {
            let x = read_field(ctx, field)?;
            let h = flow_from_field(&x, &rational(a)?)?;
            map_json(&h.at(&time_arg(x.ring(), t)?)?)?
        }
    })
}

fn read_group(ctx: &Ctx, path: &str) -> Result<FiniteGroup> {
    let spec: GroupSpec = ctx.read_json(path)?;
    Ok(FiniteGroup::from_spec(&spec)?)
}

fn read_chain(ctx: &Ctx, path: &str) -> Result<BarChain> {
    let j: ChainJson = ctx.read_json(path)?;
    Ok(BarChain::from_json(&j)?)
}

fn element(g: &FiniteGroup, s: &str) -> Result<u32> {
    if let Ok(i) = s.parse::<u32>() {
        return Ok(g.check(i)?);
    }
    g.find(s).ok_or_else(|| CliError::validation(format!("no element labelled {s}")))
}

fn check_members(g: &FiniteGroup, c: &BarChain) -> Result<()> {
    for (t, _) in c.terms() {
        for &x in t {
            g.check(x)?;
        }
    }
    Ok(())
}

pub fn chains(ctx: &Ctx, cmd: &ChainsCmd) -> Result<Value> {
    Ok(match cmd {
        ChainsCmd::Boundary { group, chain } => {
            let (g, c) = (read_group(ctx, group)?, read_chain(ctx, chain)?);
            check_members(&g, &c)?;
            to_value(&boundary(&c, &g).to_json())
        }
        ChainsCmd::Homotopy { group, chain, h } => {
            let (g, c) = (read_group(ctx, group)?, read_chain(ctx, chain)?);
            check_members(&g, &c)?;
            to_value(&homotopy(&c, element(&g, h)?, &g).to_json())
        }
        ChainsCmd::Solve { group, chain } => {
            let (g, c) = (read_group(ctx, group)?, read_chain(ctx, chain)?);
            check_members(&g, &c)?;
            to_value(&SolverCache::new(&g).solve_boundary(&c)?.to_json())
        }
        ChainsCmd::Homology { group, degree, modulus } => {
            let g = read_group(ctx, group)?;
            to_value(&SolverCache::new(&g).homology(*degree, Modulus::parse(modulus)?)?)
        }
    })
}

#[derive(Deserialize)]
struct TupleJson {
    ring: RingSpec,
    matrices: Vec<Rows>,
}

#[derive(Deserialize)]
struct MatrixChainJson {
    ring: RingSpec,
    matrices: Vec<Rows>,
    /// Tuple entries index `matrices`.
    chain: ChainJson,
}

fn reg_cutoff(ctx: &Ctx, r: &Ring) -> u32 {
    ctx.cutoff_or(min_cutoff(r.ell(), r.e(), 3, 1, REG_TARGET * r.e() as i64))
}

pub fn reg(ctx: &Ctx, cmd: &RegCmd) -> Result<Value> {
    match cmd {
        RegCmd::Phi3 { tuple } | RegCmd::Psi3 { tuple } => {
            let j: TupleJson = ctx.read_json(tuple)?;
            let r = ctx.ring_from_spec(&j.ring)?;
            let gs = j.matrices.iter().map(|m| Mat::parse(&r, m)).collect::<std::result::Result<Vec<_>, _>>()?;
            if gs.len() != 4 {
                return Err(CliError::validation(format!("need 4 matrices, got {}", gs.len())));
            }
            let c = reg_cutoff(ctx, &r);
            let v = if matches!(cmd, RegCmd::Phi3 { .. }) { phi_tilde(&r, &gs, 3, c)? } else { psi_transfer(&r, &gs, 3, c)? };
            Ok(reg_json(ctx, &v))
        }
        RegCmd::EvalChain { chain } => {
            let j: MatrixChainJson = ctx.read_json(chain)?;
            let r = ctx.ring_from_spec(&j.ring)?;
            let dim = j.matrices.first().map(|m| m.len()).ok_or_else(|| CliError::validation("no matrices"))?;
            let mg = MatrixGroup::new(&r, dim);
            let ids = j.matrices.iter().map(|m| Ok(mg.intern(&Mat::parse(&r, m)?)?)).collect::<Result<Vec<u32>>>()?;
            let c = BarChain::from_json(&j.chain)?;
            let c = c.try_map_elements(|i| ids.get(i as usize).copied().ok_or(bar_chains::ChainError::BadElement(i)))?;
            let v = regulator::evaluate_chain(&c, &mg, reg_cutoff(ctx, &r))?;
            Ok(reg_json(ctx, &v))
        }
    }
}

#[derive(Deserialize)]
struct VMatrixJson {
    ring: RingSpec,
    comps: Vec<Rows>,
}

#[derive(Deserialize)]
struct RepFileJson {
    ring: RingSpec,
    group: GroupSpec,
    gens: Vec<u32>,
    images: Vec<Rows>,
}

#[derive(Deserialize)]
struct CocyclePairJson {
    c1: Vec<Rows>,
    c2: Vec<Rows>,
}

fn read_vmatrix(ctx: &Ctx, path: &str) -> Result<(Ring, VMatrix)> {
    let j: VMatrixJson = ctx.read_json(path)?;
    let r = ctx.ring_from_spec(&j.ring)?;
    let comps = j.comps.iter().map(|m| Mat::parse(&r, m)).collect::<std::result::Result<Vec<_>, _>>()?;
    Ok((r, VMatrix::new(comps)?))
}

pub fn symp(ctx: &Ctx, cmd: &SympCmd) -> Result<Value> {
    Ok(match cmd {
        SympCmd::Tralt { x, y } => {
            let (r, x) = read_vmatrix(ctx, x)?;
            let (r2, y) = read_vmatrix(ctx, y)?;
            if r.spec() != r2.spec() {
                return Err(CliError::validation("x and y live over different rings"));
            }
            to_value(&tr_alt(&r, &x, &y)?.to_json(&r))
        }
        SympCmd::Omega { rep, cocycle, cycle } => {
            let j: RepFileJson = ctx.read_json(rep)?;
            let r = ctx.ring_from_spec(&j.ring)?;
            let g = FiniteGroup::from_spec(&j.group)?;
            let parse = |ms: &[Rows]| ms.iter().map(|m| Mat::parse(&r, m)).collect::<std::result::Result<Vec<_>, _>>();
            let rho = MatrixRep::from_generators(&g, &r, &j.gens, &parse(&j.images)?)?;
            let cj: CocyclePairJson = ctx.read_json(cocycle)?;
            let c1 = AdCocycle::from_generators(&g, &rho, &j.gens, &parse(&cj.c1)?)?;
            let c2 = AdCocycle::from_generators(&g, &rho, &j.gens, &parse(&cj.c2)?)?;
            let z = read_chain(ctx, cycle)?;
            check_members(&g, &z)?;
            to_value(&omega_vs_cup(&g, &rho, &c1, &c2, &z)?)
        }
        SympCmd::Bracket { f, g, omega } => {
            let (f, g, w) = (read_series(ctx, f)?, read_series(ctx, g)?, read_form(ctx, omega)?);
            to_value(&series_to_json(&poisson_bracket(&f, &g, &w)?))
        }
    })
}

fn read_setup(ctx: &Ctx, path: &str) -> Result<volume::VolumeSetup> {
    let j: SetupJson = ctx.read_json(path)?;
    let s = j.build()?;
    ctx.note_ring(s.ring());
    Ok(s)
}

fn vol_cutoff(ctx: &Ctx, s: &volume::VolumeSetup) -> u32 {
    let r = s.ring();
    ctx.cutoff_or(min_cutoff(r.ell(), r.e(), 3, 1, r.prec() as i64))
}

fn audits_json(ctx: &Ctx, lines: &[volume::AuditLine]) -> Value {
    let all = lines.iter().all(|l| l.pass);
    let worst = lines.iter().map(|l| l.residual.certified_abs).min();
    if let Some(w) = worst {
        ctx.note_certified(format!("l^-{w}"));
    }
    json!({"pass": all, "lines": lines.iter().map(|l| to_value(&l.to_json())).collect::<Vec<_>>()})
}

pub fn vol(ctx: &Ctx, cmd: &VolCmd) -> Result<Value> {
    match cmd {
        VolCmd::Compute { setup, datum, ambiguity } => {
            let s = read_setup(ctx, setup)?;
            let v = Volume::new(&s, vol_cutoff(ctx, &s));
            let res = v.twist_defect(*datum, *ambiguity)?;
            ctx.note_certified(res.value.to_json().certified_error);
            Ok(to_value(&res.to_json()))
        }
        VolCmd::AuditCocycle { setup, pairs } => {
            let s = read_setup(ctx, setup)?;
            let n = s.data.len();
            let pairs: Vec<(usize, usize)> = match pairs {
                None => (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect(),
                Some(p) => p
                    .split(';')
                    .filter(|x| !x.trim().is_empty())
                    .map(|x| {
                        let (a, b) = x.split_once(',').ok_or_else(|| CliError::validation(format!("bad pair {x}")))?;
                        let a = a.trim().parse().map_err(|_| CliError::validation(format!("bad pair {x}")))?;
                        let b = b.trim().parse().map_err(|_| CliError::validation(format!("bad pair {x}")))?;
                        Ok((a, b))
                    })
                    .collect::<Result<_>>()?,
            };
            let v = Volume::new(&s, vol_cutoff(ctx, &s));
            v.ambiguity()?;
            Ok(audits_json(ctx, &cocycle_audit(&v, &pairs)?))
        }
        VolCmd::AuditRestriction { setup, sub, cycle, index } => {
            let s = read_setup(ctx, setup)?;
            let c = read_chain(ctx, cycle)?;
            let v = Volume::new(&s, vol_cutoff(ctx, &s));
            v.ambiguity()?;
            Ok(audits_json(ctx, &restriction_audit(&v, sub, &c, *index)?))
        }
    }
}
