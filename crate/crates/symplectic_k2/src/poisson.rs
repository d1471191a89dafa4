//! dlog of Steinberg symbol lists, Hamiltonian fields and the Poisson bracket
//! of a nondegenerate 2-form.

use crate::error::{Result, SympError};
use padic_core::PadicScalar;
use series_ring::{dlog, pullback, wedge, DiffForm, SeriesError, TruncSeries, VectorField};

/// Σ k·{f, g}, recorded only through its dlog image.
#[derive(Clone, Debug)]
pub struct SymbolList {
    entries: Vec<(TruncSeries, TruncSeries, i64)>,
}

impl SymbolList {
    pub fn new(entries: Vec<(TruncSeries, TruncSeries, i64)>) -> Result<Self> {
        for (f, g, _) in &entries {
            f.same_space(g)?;
            if !f.constant_term().is_unit() || !g.constant_term().is_unit() {
                return Err(SeriesError::NonUnit.into());
            }
        }
        Ok(SymbolList { entries })
    }

    pub fn entries(&self) -> &[(TruncSeries, TruncSeries, i64)] {
        &self.entries
    }
}

/// Σ k·dlog f ∧ dlog g.
pub fn dlog_symbols(list: &SymbolList, ring: &padic_core::Ring, m: usize, n: i64) -> Result<DiffForm> {
    let mut acc = DiffForm::zero(ring, m, n, 2);
    for (f, g, k) in &list.entries {
        let w = wedge(&dlog(f)?, &dlog(g)?)?;
        acc = acc.add(&w.scale(&PadicScalar::from_int(ring, *k)))?;
    }
    Ok(acc)
}

/// The antisymmetric coefficient matrix W with ω = Σ_{i<j} W_ij dx_i∧dx_j.
fn coeff_matrix(w: &DiffForm) -> Result<Vec<Vec<TruncSeries>>> {
    if w.degree() != 2 {
        return Err(SeriesError::Shape("need a 2-form".into()).into());
    }
    let m = w.m();
    let zero = TruncSeries::zero(w.ring(), m, w.n());
    let mut out = vec![vec![zero; m]; m];
    for i in 0..m {
        for j in i + 1..m {
            let c = w.comp(&[i, j]);
            out[j][i] = c.neg();
            out[i][j] = c;
        }
    }
    Ok(out)
}

/// Inverse over the series ring by elimination on unit pivots.
fn series_inverse(a: &[Vec<TruncSeries>]) -> Result<Vec<Vec<TruncSeries>>> {
    let m = a.len();
    let ring = a[0][0].ring().clone();
    let n = a.iter().flatten().map(|f| f.n()).min().unwrap();
    let mut aug: Vec<Vec<TruncSeries>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..m).map(|j| if i == j { TruncSeries::one(&ring, m, n) } else { TruncSeries::zero(&ring, m, n) }));
            r
        })
        .collect();
    for c in 0..m {
        let p = (c..m).find(|&r| aug[r][c].constant_term().is_unit()).ok_or(SympError::Degenerate)?;
        aug.swap(c, p);
        let inv = aug[c][c].inv()?;
        aug[c] = aug[c].iter().map(|f| f.mul(&inv)).collect::<series_ring::Result<_>>()?;
        for r in 0..m {
            if r == c || aug[r][c].is_zero() {
                continue;
            }
            let f = aug[r][c].clone();
            let row_c = aug[c].clone();
            aug[r] = aug[r].iter().zip(&row_c).map(|(x, y)| x.sub(&f.mul(y)?)).collect::<series_ring::Result<_>>()?;
        }
    }
    Ok(aug.into_iter().map(|r| r[m..].to_vec()).collect())
}

/// Whether the coefficient matrix is invertible modulo 𝔪.
pub fn is_nondegenerate(w: &DiffForm) -> Result<bool> {
    let a = coeff_matrix(w)?;
    if w.m() == 0 {
        return Ok(true);
    }
    match series_inverse(&a) {
        Ok(_) => Ok(true),
        Err(SympError::Degenerate) => Ok(false),
        Err(e) => Err(e),
    }
}

/// X_f with X_f⌟ω = df, that is X = -W⁻¹∇f.
pub fn hamiltonian_field(f: &TruncSeries, w: &DiffForm) -> Result<VectorField> {
    let a = coeff_matrix(w)?;
    if f.m() != w.m() {
        return Err(SeriesError::VarMismatch.into());
    }
    let inv = series_inverse(&a)?;
    let grad: Vec<TruncSeries> = (0..f.m()).map(|j| f.derivative(j)).collect();
    let comps = inv
        .iter()
        .map(|row| {
            let mut acc = TruncSeries::zero(f.ring(), f.m(), f.n());
            for (x, g) in row.iter().zip(&grad) {
                acc = acc.add(&x.mul(g)?)?;
            }
            Ok(acc.neg())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VectorField::new(comps)?)
}

/// ω(X, Y) = Σ_ij X_i W_ij Y_j.
pub fn form_on_fields(w: &DiffForm, x: &VectorField, y: &VectorField) -> Result<TruncSeries> {
    let a = coeff_matrix(w)?;
    let m = w.m();
    let mut acc = TruncSeries::zero(w.ring(), m, w.n());
    for i in 0..m {
        for j in 0..m {
            if i != j {
                acc = acc.add(&x.comp(i).mul(&a[i][j])?.mul(y.comp(j))?)?;
            }
        }
    }
    Ok(acc)
}

/// {f, g} = ω(X_f, X_g).
pub fn poisson_bracket(f: &TruncSeries, g: &TruncSeries, w: &DiffForm) -> Result<TruncSeries> {
    let xf = hamiltonian_field(f, w)?;
    let xg = hamiltonian_field(g, w)?;
    form_on_fields(w, &xf, &xg)
}

/// Validates a supplied pair (φ, χ): φ^*ω must equal χ⁻¹·ω at truncation.
pub fn check_conformal(phi: &[TruncSeries], w: &DiffForm, chi: &PadicScalar) -> Result<()> {
    let lhs = pullback(w, phi)?;
    let rhs = w.scale(&chi.inv()?);
    if lhs.agrees_with(&rhs) {
        Ok(())
    } else {
        Err(SympError::NotConformal)
    }
}
