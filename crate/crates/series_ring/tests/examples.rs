mod common;

use common::*;
use padic_core::PadicScalar;
use series_ring::*;

#[test]
fn invert_geometric() {
    let r = ring(3, 12);
    let f = s(&r, 1, 8, &[(&[0], 1), (&[1], 1)]);
    let g = f.inv().unwrap();
    let want: Vec<(Vec<u32>, i64)> = (0..8).map(|k| (vec![k], if k % 2 == 0 { 1 } else { -1 })).collect();
    assert!(matches(&g, &Poly::from_terms(&want)));
    assert_eq!(g.n(), 8);
    assert!(f.mul(&g).unwrap().agrees_with(&TruncSeries::one(&r, 1, 8)));
    assert!(matches!(s(&r, 1, 8, &[(&[1], 1)]).inv(), Err(SeriesError::NonUnit)));
    assert!(matches!(s(&r, 1, 8, &[(&[0], 3)]).inv(), Err(SeriesError::NonUnit)));
}

#[test]
fn ring_identities() {
    let r = ring(5, 10);
    let f = s(&r, 2, 7, &[(&[1, 0], 2), (&[0, 2], -1), (&[0, 0], 5)]);
    assert_eq!(f.mul(&TruncSeries::one(&r, 2, 7)).unwrap(), f);
    assert!(f.add(&f.neg()).unwrap().is_zero());
}

#[test]
fn truncation_is_mixed() {
    // 3^5 x^3 vanishes modulo 𝔪^8 but 3^4 x^3 does not
    let r = ring(3, 12);
    assert!(s(&r, 1, 8, &[(&[3], 243)]).is_zero());
    assert_eq!(s(&r, 1, 8, &[(&[3], 81)]).len(), 1);
}

#[test]
fn substitution_examples() {
    let r = ring(3, 12);
    let psi = vec![s(&r, 1, 8, &[(&[1], 1), (&[2], 1)])];
    let x = TruncSeries::var(&r, 1, 8, 0);
    assert_eq!(x.substitute(&psi).unwrap(), psi[0]);
    let x2 = s(&r, 1, 8, &[(&[2], 1)]);
    let got = x2.substitute(&psi).unwrap();
    assert_eq!(got, s(&r, 1, 8, &[(&[2], 1), (&[3], 2), (&[4], 1)]));
    let f = s(&r, 2, 6, &[(&[1, 1], 2), (&[0, 3], 1), (&[2, 0], -3)]);
    let id = vec![TruncSeries::var(&r, 2, 6, 0), TruncSeries::var(&r, 2, 6, 1)];
    assert_eq!(f.substitute(&id).unwrap(), f);
    let bad = vec![s(&r, 1, 8, &[(&[0], 1), (&[1], 1)])];
    assert!(matches!(x.substitute(&bad), Err(SeriesError::NotContracting(0))));
}

#[test]
fn gauss_norm_examples() {
    let r = ring(3, 12);
    let f = s(&r, 1, 8, &[(&[0], 3), (&[2], 1)]);
    assert_eq!(f.gauss_norm(&q(1, 2)).unwrap().log_norm, Some(q(1, 1)));
    let one = TruncSeries::one(&r, 2, 8);
    assert_eq!(one.gauss_norm(&q(1, 3)).unwrap().log_norm, Some(q(0, 1)));
    let x = TruncSeries::var(&r, 2, 8, 1);
    for a in [q(1, 1), q(1, 2), q(1, 7)] {
        assert_eq!(x.gauss_norm(&a).unwrap().log_norm, Some(a.clone()));
    }
    assert!(x.gauss_norm(&q(3, 2)).is_err());
    assert!(x.gauss_norm(&q(0, 1)).is_err());
}

#[test]
fn exterior_d_examples() {
    let r = ring(3, 12);
    let f = s(&r, 2, 8, &[(&[1, 1], 1)]);
    let df = exterior_d(&f);
    assert_eq!(df.comp(&[0]), s(&r, 2, 7, &[(&[0, 1], 1)]));
    assert_eq!(df.comp(&[1]), s(&r, 2, 7, &[(&[1, 0], 1)]));
    assert!(exterior_d_form(&df).unwrap().is_zero());
    assert!(exterior_d(&TruncSeries::constant(&r, 2, 8, PadicScalar::from_int(&r, 7))).is_zero());
    let two = wedge(&df, &df).unwrap();
    assert!(matches!(exterior_d_form(&two), Err(SeriesError::DegreeTooHigh(2))));
}

#[test]
fn dlog_examples() {
    let r = ring(3, 12);
    let f = s(&r, 1, 8, &[(&[0], 1), (&[1], 1)]);
    let w = dlog(&f).unwrap();
    let want: Vec<(Vec<u32>, i64)> = (0..8).map(|k| (vec![k], if k % 2 == 0 { 1 } else { -1 })).collect();
    assert!(matches(&w.comp(&[0]), &Poly::from_terms(&want)));
    let c = TruncSeries::constant(&r, 1, 8, PadicScalar::from_int(&r, 5));
    assert!(dlog(&c).unwrap().is_zero());
    assert!(matches!(dlog(&TruncSeries::var(&r, 1, 8, 0)), Err(SeriesError::NonUnit)));
}

#[test]
fn wedge_examples() {
    let r = ring(3, 12);
    let dx1 = exterior_d(&TruncSeries::var(&r, 2, 9, 0));
    let dx2 = exterior_d(&TruncSeries::var(&r, 2, 9, 1));
    let w = wedge(&dx1, &dx2).unwrap();
    assert_eq!(w.comp(&[0, 1]), TruncSeries::one(&r, 2, 8));
    assert_eq!(w.comp(&[1, 0]), TruncSeries::one(&r, 2, 8).neg());
    assert!(wedge(&dx1, &dx1).unwrap().is_zero());
    let a = DiffForm::one_form(vec![s(&r, 2, 8, &[(&[0, 1], 1)]), TruncSeries::zero(&r, 2, 8)]).unwrap();
    let b = DiffForm::one_form(vec![TruncSeries::zero(&r, 2, 8), s(&r, 2, 8, &[(&[1, 0], 1)])]).unwrap();
    assert!(wedge(&a, &b).unwrap().comp(&[0, 1]).agrees_with(&s(&r, 2, 8, &[(&[1, 1], 1)])));
}

fn std_two_form(r: &padic_core::Ring, n: i64) -> DiffForm {
    DiffForm::from_components(r, 2, 2, vec![(vec![0, 1], TruncSeries::one(r, 2, n))]).unwrap()
}

#[test]
fn contract_examples() {
    let r = ring(3, 12);
    let w = std_two_form(&r, 8);
    let d1 = VectorField::coordinate(&r, 2, 8, 0);
    let c = contract(&d1, &w).unwrap();
    assert_eq!(c.comp(&[1]), TruncSeries::one(&r, 2, 8));
    assert!(c.comp(&[0]).is_zero());
    let x = VectorField::new(vec![s(&r, 2, 8, &[(&[0, 1], 1)]), s(&r, 2, 8, &[(&[1, 0], -1)])]).unwrap();
    let c = contract(&x, &w).unwrap();
    assert_eq!(c.comp(&[0]), s(&r, 2, 8, &[(&[1, 0], 1)]));
    assert_eq!(c.comp(&[1]), s(&r, 2, 8, &[(&[0, 1], 1)]));
    assert!(contract(&x, &c).unwrap().comp(&[]).is_zero());
}

#[test]
fn antiderivative_examples() {
    let r = ring(3, 12);
    let mu = DiffForm::one_form(vec![TruncSeries::one(&r, 2, 8), TruncSeries::zero(&r, 2, 8)]).unwrap();
    assert!(antiderivative(&mu).unwrap().agrees_with(&TruncSeries::var(&r, 2, 8, 0)));
    let mu = DiffForm::one_form(vec![s(&r, 2, 8, &[(&[0, 1], 1)]), s(&r, 2, 8, &[(&[1, 0], 1)])]).unwrap();
    let f = antiderivative(&mu).unwrap();
    assert!(f.agrees_with(&s(&r, 2, 8, &[(&[1, 1], 1)])));
    assert!(f.n() >= 7);
    let mu = DiffForm::one_form(vec![s(&r, 2, 8, &[(&[0, 1], 1)]), TruncSeries::zero(&r, 2, 8)]).unwrap();
    match antiderivative(&mu) {
        Err(SeriesError::NotClosed { i, j, .. }) => assert_eq!((i, j), (0, 1)),
        other => panic!("{other:?}"),
    }
}

#[test]
fn json_round_trip() {
    let r = ring(3, 12);
    let f = s(&r, 2, 8, &[(&[1, 0], 1), (&[0, 2], -4), (&[0, 0], 9)]).scale_rational(&q(1, 3));
    let j = json::series_to_json(&f);
    let text = serde_json::to_string(&j).unwrap();
    assert!(text.starts_with(r#"{"ring":{"ell":3,"e":1,"P":12},"m":2,"n":"#));
    let back = json::series_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
    assert_eq!(back, f);
    let w = std_two_form(&r, 8);
    let wj = json::form_to_json(&w);
    assert!(wj.components.contains_key("d12"));
    assert_eq!(json::form_from_json(&wj).unwrap(), w);
    let input = r#"{"ring":{"ell":3,"e":1,"P":12},"m":1,"n":6,"terms":[{"exp":[2],"c":"1/2"}]}"#;
    let g = json::series_from_json(&serde_json::from_str(input).unwrap()).unwrap();
    assert!(g.scale_int(2).agrees_with(&s(&r, 1, 6, &[(&[2], 1)])));
}

#[test]
fn oracle_detects_differences() {
    let r = ring(3, 12);
    let f = s(&r, 1, 6, &[(&[2], 1)]);
    assert!(matches(&f, &Poly::from_terms(&[(vec![2], 1)])));
    assert!(!matches(&f, &Poly::from_terms(&[(vec![2], 2)])));
    assert!(!matches(&f, &Poly::from_terms(&[(vec![2], 1), (vec![3], 1)])));
    assert!(matches(&f, &Poly::from_terms(&[(vec![2], 1), (vec![3], 27)])));
}
