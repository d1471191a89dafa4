//! JSON wire formats. Coefficients are written as valuation w (in units of
//! v_l) and unit u; the unit is known modulo 𝔩^(n-|i|). On input a term may
//! instead give an exact rational "c".

use crate::error::{Result, SeriesError};
use crate::field::VectorField;
use crate::forms::{label, parse_label, DiffForm};
use crate::mono::Mono;
use crate::series::TruncSeries;
use num_bigint::BigInt;
use num_rational::BigRational;
use padic_core::{fmt_rational, parse_rational, PadicScalar, Ring, RingSpec};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub ring: RingSpec,
    pub m: usize,
    pub n: i64,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComponentJson {
    pub n: i64,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FormJson {
    pub ring: RingSpec,
    pub m: usize,
    pub degree: usize,
    pub components: BTreeMap<String, ComponentJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldJson {
    pub ring: RingSpec,
    pub m: usize,
    pub components: Vec<ComponentJson>,
}

fn terms_to_json(f: &TruncSeries) -> Vec<TermJson> {
    let r = f.ring();
    f.terms()
        .map(|(k, c)| TermJson {
            exp: k.exps(f.m()),
            w: Some(fmt_rational(&c.valuation())),
            u: Some(r.format(c.unit())),
            c: None,
        })
        .collect()
}

fn terms_from_json(ring: &Ring, m: usize, n: i64, terms: &[TermJson]) -> Result<TruncSeries> {
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        if t.exp.len() != m {
            return Err(SeriesError::Parse(format!("exponent {:?} for {m} variables", t.exp)));
        }
        let k = Mono::from_exps(&t.exp)?;
        let c = match (&t.c, &t.w, &t.u) {
            (Some(c), _, _) => {
                let q = parse_rational(c).ok_or_else(|| SeriesError::Parse(format!("bad rational {c}")))?;
                PadicScalar::from_rational(ring, &q)
            }
            (None, Some(w), Some(u)) => {
                let wq = parse_rational(w).ok_or_else(|| SeriesError::Parse(format!("bad valuation {w}")))?;
                let we = wq * BigRational::from_integer(BigInt::from(ring.e()));
                if !we.is_integer() {
                    return Err(SeriesError::Parse(format!("valuation {w} not in (1/e)Z")));
                }
                let we: i64 = we.to_integer().try_into().map_err(|_| SeriesError::Parse(w.clone()))?;
                let unit = ring.parse(u)?;
                if unit.is_zero() {
                    continue;
                }
                if !ring.is_unit(unit) {
                    return Err(SeriesError::Parse(format!("u = {u} is not a unit")));
                }
                PadicScalar::from_unit(ring, we, unit, n - k.degree())
            }
            _ => return Err(SeriesError::Parse("term needs either c or both w and u".into())),
        };
        out.push((k, c));
    }
    Ok(TruncSeries::from_terms(ring, m, n, out))
}

pub fn series_to_json(f: &TruncSeries) -> SeriesJson {
    SeriesJson { ring: f.ring().spec(), m: f.m(), n: f.n(), terms: terms_to_json(f) }
}

pub fn series_from_json(j: &SeriesJson) -> Result<TruncSeries> {
    let ring = Ring::from_spec(&j.ring)?;
    series_from_json_in(&ring, j)
}

pub fn series_from_json_in(ring: &Ring, j: &SeriesJson) -> Result<TruncSeries> {
    if ring.spec() != j.ring {
        return Err(SeriesError::VarMismatch);
    }
    terms_from_json(ring, j.m, j.n, &j.terms)
}

pub fn form_to_json(w: &DiffForm) -> FormJson {
    let components = w
        .components()
        .map(|(k, f)| (label(k), ComponentJson { n: f.n(), terms: terms_to_json(f) }))
        .collect();
    FormJson { ring: w.ring().spec(), m: w.m(), degree: w.degree(), components }
}

pub fn form_from_json(j: &FormJson) -> Result<DiffForm> {
    let ring = Ring::from_spec(&j.ring)?;
    form_from_json_in(&ring, j)
}

pub fn form_from_json_in(ring: &Ring, j: &FormJson) -> Result<DiffForm> {
    let mut parts = Vec::new();
    for (lab, c) in &j.components {
        let mask = if j.degree == 0 && lab == "d" { 0 } else { parse_label(lab, j.m)? };
        let idx: Vec<usize> = (0..j.m).filter(|&i| mask >> i & 1 == 1).collect();
        parts.push((idx, terms_from_json(ring, j.m, c.n, &c.terms)?));
    }
    DiffForm::from_components(ring, j.m, j.degree, parts)
}

pub fn field_to_json(x: &VectorField) -> FieldJson {
    let components = x.comps().iter().map(|f| ComponentJson { n: f.n(), terms: terms_to_json(f) }).collect();
    FieldJson { ring: x.ring().spec(), m: x.m(), components }
}

pub fn field_from_json(j: &FieldJson) -> Result<VectorField> {
    let ring = Ring::from_spec(&j.ring)?;
    field_from_json_in(&ring, j)
}

pub fn field_from_json_in(ring: &Ring, j: &FieldJson) -> Result<VectorField> {
    if j.components.len() != j.m {
        return Err(SeriesError::Parse("field needs m components".into()));
    }
    let comps = j.components.iter().map(|c| terms_from_json(ring, j.m, c.n, &c.terms)).collect::<Result<_>>()?;
    VectorField::new(comps)
}
