//! Brackets, Lie derivatives, Hamiltonian potentials and critical points.

use crate::error::{FlowError, Result};
use crate::map::SeriesMap;
use num_bigint::BigInt;
use num_rational::BigRational;
use padic_core::PadicScalar;
use series_ring::{antiderivative, contract, exterior_d_any, pullback, DiffForm, SeriesError, TruncSeries, VectorField};

/// [X,Y] with components X(Y_i) - Y(X_i).
pub fn field_bracket(x: &VectorField, y: &VectorField) -> Result<VectorField> {
    if x.m() != y.m() {
        return Err(SeriesError::VarMismatch.into());
    }
    let comps = (0..x.m())
        .map(|i| Ok(x.apply(y.comp(i))?.sub(&y.apply(x.comp(i))?)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(VectorField::new(comps)?)
}

/// L_X ω = d(i_X ω) + i_X(dω).
pub fn lie_derivative(x: &VectorField, w: &DiffForm) -> Result<DiffForm> {
    let a = exterior_d_any(&contract(x, w)?);
    let dw = exterior_d_any(w);
    if dw.degree() > dw.m() {
        return Ok(a);
    }
    Ok(a.add(&contract(x, &dw)?)?)
}

/// V with dV = i_X ω and V(0) = 0.
pub fn hamiltonian_potential(x: &VectorField, w: &DiffForm) -> Result<TruncSeries> {
    Ok(antiderivative(&contract(x, w)?)?)
}

/// {V_X, V_Y} = ω(X, Y), so that -d{V_X, V_Y} = i_[X,Y] ω for Hamiltonian X, Y.
pub fn poisson(x: &VectorField, y: &VectorField, w: &DiffForm) -> Result<TruncSeries> {
    if w.degree() != 2 {
        return Err(SeriesError::Shape("poisson bracket needs a 2-form".into()).into());
    }
    Ok(contract(y, &contract(x, w)?)?.comp(&[]))
}

/// l^(-j)((ψ^(l^j))^*ω - ω), kept to 𝔪-order e·j where it approximates L_X ω.
pub fn lie_derivative_limit(psi: &SeriesMap, w: &DiffForm, j: u32) -> Result<DiffForm> {
    let ring = psi.ring().clone();
    let lj = (ring.ell() as u64).pow(j);
    let it = psi.iterate(lj)?;
    let diff = pullback(w, it.comps())?.sub(w)?;
    let q = BigRational::new(BigInt::from(1), BigInt::from(lj));
    let comps: Vec<(Vec<usize>, TruncSeries)> = diff
        .components()
        .map(|(mask, f)| (series_ring::forms::mask_indices(mask), f.scale_rational(&q)))
        .collect();
    let out = DiffForm::from_components(&ring, w.m(), w.degree(), comps)?;
    let cap = ring.e() as i64 * j as i64;
    Ok(out.truncate(out.n().min(cap)))
}

/// Per field: whether X(point) = 0. A certified zero means the point is fixed
/// by the flow. `min_prec` defaults to the field's truncation order.
pub fn is_critical(fields: &[VectorField], point: &[PadicScalar], min_prec: Option<i64>) -> Result<Vec<bool>> {
    let mut out = Vec::with_capacity(fields.len());
    for x in fields {
        let vals = x.eval(point)?;
        if vals.iter().any(|v| !v.is_zero()) {
            out.push(false);
            continue;
        }
        let need = min_prec.unwrap_or(x.n());
        if let Some(i) = vals.iter().position(|v| v.abs_prec() < need) {
            return Err(FlowError::Inconclusive(i));
        }
        out.push(true);
    }
    Ok(out)
}
