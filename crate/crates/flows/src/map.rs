//! Self-maps of the polydisk given by component series, and the difference
//! operator Δ(h) = h∘ψ - h.

use crate::error::{FlowError, Result};
use padic_core::{Ring, EXACT};
use series_ring::TruncSeries;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesMap {
    comps: Vec<TruncSeries>,
    congruence: i64,
}

impl SeriesMap {
    pub fn new(comps: Vec<TruncSeries>) -> Result<Self> {
        let m = comps.len();
        if m == 0 {
            return Err(FlowError::NotAnAutomorphism);
        }
        for c in &comps {
            if c.m() != m {
                return Err(FlowError::NotAnAutomorphism);
            }
            comps[0].same_space(c)?;
            if c.order() < 1 {
                return Err(FlowError::NotAnAutomorphism);
            }
        }
        let ring = comps[0].ring().clone();
        let mut congruence = EXACT;
        for (j, c) in comps.iter().enumerate() {
            let d = c.sub(&TruncSeries::var(&ring, m, EXACT, j))?;
            congruence = congruence.min(d.order());
        }
        Ok(SeriesMap { comps, congruence })
    }

    pub fn identity(ring: &Ring, m: usize, n: i64) -> Self {
        Self::new((0..m).map(|j| TruncSeries::var(ring, m, n, j)).collect()).expect("identity is valid")
    }

    pub fn comps(&self) -> &[TruncSeries] {
        &self.comps
    }

    pub fn m(&self) -> usize {
        self.comps.len()
    }

    pub fn ring(&self) -> &Ring {
        self.comps[0].ring()
    }

    pub fn n(&self) -> i64 {
        self.comps.iter().map(|c| c.n()).min().unwrap_or(EXACT)
    }

    /// Largest N with ψ(x) - x ∈ (𝔪^N)^m, capped at the truncation order.
    pub fn congruence_order(&self) -> i64 {
        self.congruence
    }

    /// f∘ψ.
    pub fn pull(&self, f: &TruncSeries) -> Result<TruncSeries> {
        Ok(f.substitute(&self.comps)?)
    }

    /// self∘other.
    pub fn compose(&self, other: &SeriesMap) -> Result<SeriesMap> {
        let comps = self.comps.iter().map(|c| c.substitute(&other.comps)).collect::<std::result::Result<_, _>>()?;
        SeriesMap::new(comps)
    }

    /// k-fold composition by repeated squaring.
    pub fn iterate(&self, k: u64) -> Result<SeriesMap> {
        let mut acc = SeriesMap::identity(self.ring(), self.m(), self.n());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.compose(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.compose(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn truncate(&self, n: i64) -> SeriesMap {
        SeriesMap::new(self.comps.iter().map(|c| c.truncate(n)).collect()).expect("truncation keeps the shape")
    }

    pub fn agrees_with(&self, o: &SeriesMap) -> bool {
        self.m() == o.m() && self.comps.iter().zip(&o.comps).all(|(a, b)| a.agrees_with(b))
    }
}

/// Δ^k(x) for k = 0..=kmax, componentwise.
pub fn delta_powers(psi: &SeriesMap, kmax: usize) -> Result<Vec<Vec<TruncSeries>>> {
    let mut out = vec![psi.comps.iter().enumerate().map(|(j, c)| TruncSeries::var(c.ring(), psi.m(), psi.n(), j)).collect::<Vec<_>>()];
    for _ in 0..kmax {
        let prev = out.last().unwrap();
        let next = prev.iter().map(|h| Ok(psi.pull(h)?.sub(h)?)).collect::<Result<Vec<_>>>()?;
        out.push(next);
    }
    Ok(out)
}

/// Δ^k(x) together with the order k(N-1)+1 it is guaranteed to reach.
pub fn delta_power(psi: &SeriesMap, k: usize) -> Result<(Vec<TruncSeries>, i64)> {
    let all = delta_powers(psi, k)?;
    let bound = if k == 0 { 1 } else { k as i64 * (psi.congruence_order() - 1) + 1 };
    Ok((all.into_iter().last().unwrap(), bound))
}
