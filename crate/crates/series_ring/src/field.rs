use crate::error::{Result, SeriesError};
use crate::series::{GaussNorm, TruncSeries};
use num_rational::BigRational;
use padic_core::{PadicScalar, Ring, EXACT};

/// Σ X_i ∂/∂x_i with series coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorField {
    comps: Vec<TruncSeries>,
}

impl VectorField {
    pub fn new(comps: Vec<TruncSeries>) -> Result<Self> {
        let m = comps.len();
        if m == 0 {
            return Err(SeriesError::Shape("vector field needs at least one component".into()));
        }
        for c in &comps {
            if c.m() != m {
                return Err(SeriesError::Shape(format!("component in {} variables for an {m}-dimensional field", c.m())));
            }
            comps[0].same_space(c)?;
        }
        Ok(VectorField { comps })
    }

    pub fn zero(ring: &Ring, m: usize, n: i64) -> Self {
        VectorField { comps: (0..m).map(|_| TruncSeries::zero(ring, m, n)).collect() }
    }

    /// ∂/∂x_i.
    pub fn coordinate(ring: &Ring, m: usize, n: i64, i: usize) -> Self {
        let mut f = Self::zero(ring, m, n);
        f.comps[i] = TruncSeries::one(ring, m, n);
        f
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

    pub fn comps(&self) -> &[TruncSeries] {
        &self.comps
    }

    pub fn comp(&self, i: usize) -> &TruncSeries {
        &self.comps[i]
    }

    pub fn into_comps(self) -> Vec<TruncSeries> {
        self.comps
    }

    /// X(f) = Σ X_i ∂f/∂x_i.
    pub fn apply(&self, f: &TruncSeries) -> Result<TruncSeries> {
        if f.m() != self.m() {
            return Err(SeriesError::VarMismatch);
        }
        let mut acc = TruncSeries::zero(f.ring(), f.m(), EXACT);
        for (i, xi) in self.comps.iter().enumerate() {
            acc = acc.add(&xi.mul(&f.derivative(i))?)?;
        }
        Ok(acc)
    }

    fn zip(&self, o: &Self, op: impl Fn(&TruncSeries, &TruncSeries) -> Result<TruncSeries>) -> Result<Self> {
        if self.m() != o.m() {
            return Err(SeriesError::VarMismatch);
        }
        let comps = self.comps.iter().zip(&o.comps).map(|(a, b)| op(a, b)).collect::<Result<_>>()?;
        Ok(VectorField { comps })
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.zip(o, |a, b| a.add(b))
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.zip(o, |a, b| a.sub(b))
    }

    pub fn neg(&self) -> Self {
        VectorField { comps: self.comps.iter().map(|c| c.neg()).collect() }
    }

    pub fn scale(&self, c: &PadicScalar) -> Self {
        VectorField { comps: self.comps.iter().map(|x| x.scale(c)).collect() }
    }

    pub fn mul_fn(&self, f: &TruncSeries) -> Result<Self> {
        let comps = self.comps.iter().map(|x| x.mul(f)).collect::<Result<_>>()?;
        Ok(VectorField { comps })
    }

    pub fn truncate(&self, n: i64) -> Self {
        VectorField { comps: self.comps.iter().map(|c| c.truncate(n)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    pub fn agrees_with(&self, o: &Self) -> bool {
        self.sub(o).map(|d| d.is_zero()).unwrap_or(false)
    }

    pub fn eval(&self, point: &[PadicScalar]) -> Result<Vec<PadicScalar>> {
        self.comps.iter().map(|c| c.eval(point)).collect()
    }

    /// max_i ‖X_i‖_r, reported as the minimal log-norm.
    pub fn gauss_norm(&self, a: &BigRational) -> Result<GaussNorm> {
        let mut best: Option<GaussNorm> = None;
        for c in &self.comps {
            let g = c.gauss_norm(a)?;
            best = Some(match best {
                None => g,
                Some(b) => GaussNorm {
                    log_norm: match (b.log_norm, g.log_norm) {
                        (Some(x), Some(y)) => Some(x.min(y)),
                        (x, None) => x,
                        (None, y) => y,
                    },
                    radius_exponent: b.radius_exponent,
                    tail_log_norm: b.tail_log_norm.min(g.tail_log_norm),
                },
            });
        }
        Ok(best.expect("nonempty field"))
    }
}
