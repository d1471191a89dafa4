//! Per-invocation state: global flags, input digests and the run manifest.

use crate::error::{CliError, Result};
use padic_core::{Ring, RingSpec};
use serde::de::DeserializeOwned;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};
use std::cell::RefCell;
use std::collections::BTreeMap;

pub const DEFAULT_PRECISION: u32 = 20;

pub struct Ctx {
    pub argv: Vec<String>,
    pub precision: Option<u32>,
    pub cutoff: Option<u32>,
    pub seed: u64,
    inputs: RefCell<BTreeMap<String, String>>,
    ring: RefCell<Option<RingSpec>>,
    cutoff_used: RefCell<Option<u32>>,
    certified: RefCell<Option<String>>,
}

impl Ctx {
    pub fn new(argv: Vec<String>, precision: Option<u32>, cutoff: Option<u32>, seed: u64) -> Self {
        Ctx {
            argv,
            precision,
            cutoff,
            seed,
            inputs: RefCell::new(BTreeMap::new()),
            ring: RefCell::new(None),
            cutoff_used: RefCell::new(None),
            certified: RefCell::new(None),
        }
    }

    pub fn read_json<T: DeserializeOwned>(&self, path: &str) -> Result<T> {
        let bytes = std::fs::read(path).map_err(|e| CliError::new(crate::error::VALIDATION, "Io", format!("{path}: {e}")))?;
        self.inputs.borrow_mut().insert(path.to_string(), hex::encode(Sha256::digest(&bytes)));
        serde_json::from_slice(&bytes).map_err(|e| CliError::new(crate::error::VALIDATION, "Parse", format!("{path}: {e}")))
    }

    /// Ring from flags; `--precision` overrides the default.
    pub fn ring(&self, ell: u64, eisenstein: &[i64]) -> Result<Ring> {
        let prec = self.precision.unwrap_or(DEFAULT_PRECISION);
        let spec = if eisenstein.is_empty() { RingSpec::new(ell, prec) } else { RingSpec::ramified(ell, eisenstein.to_vec(), prec) };
        self.ring_from_spec(&spec)
    }

    /// A ring read from input; `--precision`, when given, replaces P.
    pub fn ring_from_spec(&self, spec: &RingSpec) -> Result<Ring> {
        let mut spec = spec.clone();
        if let Some(p) = self.precision {
            spec.prec = p;
        }
        let r = Ring::from_spec(&spec)?;
        self.note_ring(&r);
        Ok(r)
    }

    pub fn note_ring(&self, r: &Ring) {
        *self.ring.borrow_mut() = Some(r.spec());
    }

    pub fn cutoff_or(&self, default: u32) -> u32 {
        let c = self.cutoff.unwrap_or(default);
        *self.cutoff_used.borrow_mut() = Some(c);
        c
    }

    pub fn note_certified(&self, s: impl Into<String>) {
        *self.certified.borrow_mut() = Some(s.into());
    }

    pub fn manifest(&self, wall_ms: Option<u128>) -> Value {
        let mut m = Map::new();
        m.insert("command_line".into(), json!(self.argv));
        m.insert("inputs".into(), json!(*self.inputs.borrow()));
        m.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
        m.insert("seed".into(), json!(self.seed));
        if let Some(r) = &*self.ring.borrow() {
            m.insert("ring".into(), serde_json::to_value(r).unwrap());
            m.insert("precision".into(), json!(r.prec));
        }
        if let Some(c) = *self.cutoff_used.borrow() {
            m.insert("cutoff".into(), json!(c));
        }
        if let Some(c) = &*self.certified.borrow() {
            m.insert("certified_error".into(), json!(c));
        }
        if let Some(w) = wall_ms {
            m.insert("wall_time_ms".into(), json!(w as u64));
        }
        Value::Object(m)
    }
}
