mod common;

use common::{q, ring, s};
use flows::*;
use padic_core::{PadicScalar, Ring};
use proptest::prelude::*;
use series_ring::{contract, exterior_d, exterior_d_any, DiffForm, TruncSeries, VectorField};

/// x + 3·b·x + Σ_{k≥2} a_k x^k, congruent to the identity modulo 𝔪^2.
fn psi1(r: &Ring, n: i64, b: i64, a: &[i64]) -> SeriesMap {
    let mut t: Vec<(Vec<u32>, i64)> = vec![(vec![1], 1 + 3 * b)];
    for (i, &c) in a.iter().enumerate() {
        t.push((vec![i as u32 + 2], c));
    }
    let refs: Vec<(&[u32], i64)> = t.iter().map(|(e, c)| (&e[..], *c)).collect();
    SeriesMap::new(vec![s(r, 1, n, &refs)]).unwrap()
}

fn near_id() -> impl Strategy<Value = (i64, Vec<i64>)> {
    (-4i64..5, prop::collection::vec(-4i64..5, 1..5))
}

/// Two-variable map congruent to the identity modulo 𝔪^2.
fn psi2(r: &Ring, n: i64, c: &[i64]) -> SeriesMap {
    let f = s(r, 2, n, &[(&[1, 0], 1 + 3 * c[0]), (&[0, 1], 3 * c[1]), (&[2, 0], c[2]), (&[1, 1], c[3])]);
    let g = s(r, 2, n, &[(&[0, 1], 1 + 3 * c[4]), (&[1, 0], 3 * c[5]), (&[0, 2], c[6]), (&[2, 1], c[7])]);
    SeriesMap::new(vec![f, g]).unwrap()
}

#[test]
fn iterate_agreement() {
    let r = ring(3, 30);
    for (b, a) in [(1, vec![1, 0, 2]), (0, vec![1]), (-2, vec![0, 1, -1, 3]), (4, vec![2, 2])] {
        let psi = psi1(&r, 8, b, &a);
        let c = certify(&psi, &q(1, 1)).unwrap();
        for k in [2u64, 3, 9, 27, 243] {
            let lhs = interpolate_iterate(&psi, &Time::int(k as i64), &c).unwrap();
            let rhs = psi.iterate(k).unwrap();
            assert!(lhs.agrees_with(&rhs), "k = {k}");
        }
    }
}

#[test]
fn lemma_powers_of_ell() {
    let r = ring(3, 30);
    for (b, a) in [(1, vec![1, 0, 2]), (0, vec![1]), (2, vec![0, 0, 1, 1, 1])] {
        let psi = psi1(&r, 10, b, &a);
        let mut p = psi.clone();
        for n in 0..=4 {
            assert!(p.congruence_order() >= n + 2, "ψ^(3^{n}) has order {}", p.congruence_order());
            p = p.iterate(3).unwrap();
        }
    }
    let r = ring(5, 20);
    let psi = SeriesMap::new(vec![s(&r, 1, 9, &[(&[1], 6), (&[2], 1)])]).unwrap();
    let mut p = psi;
    for n in 0..=4 {
        assert!(p.congruence_order() >= n + 2);
        p = p.iterate(5).unwrap();
    }
}

#[test]
fn finite_difference_limit() {
    let r = ring(3, 36);
    let psi = psi2(&r, 12, &[1, 0, 1, 2, -1, 1, 1, 0]);
    let x = vector_field_log(&psi).unwrap();
    let w = DiffForm::from_components(&r, 2, 2, vec![(vec![0, 1], s(&r, 2, 12, &[(&[0, 0], 1), (&[1, 0], 1), (&[0, 1], 2)]))]).unwrap();
    let l = lie_derivative(&x, &w).unwrap();
    assert!(l.agrees_with(&exterior_d_any(&contract(&x, &w).unwrap())));
    for j in 1..=3 {
        let lim = lie_derivative_limit(&psi, &w, j).unwrap();
        assert!(lim.n() >= j as i64);
        assert!(!lim.is_zero() || j == 1);
        assert!(lim.agrees_with(&l.truncate(lim.n())), "j = {j}");
    }
}

fn hamiltonian(r: &Ring, h: &TruncSeries, u: &TruncSeries) -> VectorField {
    // i_X(u dx1∧dx2) = u(X1 dx2 - X2 dx1) = dH
    let ui = u.inv().unwrap();
    VectorField::new(vec![h.derivative(1).mul(&ui).unwrap(), h.derivative(0).neg().mul(&ui).unwrap()]).unwrap_or_else(|_| VectorField::zero(r, 2, h.n()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn one_parameter_law((b, a) in near_id(), t1 in -20i64..20, d1 in 1i64..6, t2 in -20i64..20, d2 in 1i64..6) {
        let r = ring(3, 30);
        let psi = psi1(&r, 8, b, &a);
        let c = certify(&psi, &q(1, 1)).unwrap();
        // denominators prime to 3 keep t in Z_3
        let (u, v) = (q(t1, 3 * d1 - 1), q(t2, 3 * d2 - 1));
        let s = interpolate_iterate(&psi, &Time::Rational(&u + &v), &c).unwrap();
        let pu = interpolate_iterate(&psi, &Time::Rational(u), &c).unwrap();
        let pv = interpolate_iterate(&psi, &Time::Rational(v), &c).unwrap();
        prop_assert!(s.agrees_with(&pu.compose(&pv).unwrap()));
    }

    #[test]
    fn scalar_time_matches_rational((b, a) in near_id(), t in -50i64..50) {
        let r = ring(3, 30);
        let psi = psi1(&r, 8, b, &a);
        let c = certify(&psi, &q(1, 1)).unwrap();
        let x = interpolate_iterate(&psi, &Time::int(t), &c).unwrap();
        let y = interpolate_iterate(&psi, &Time::Scalar(PadicScalar::from_int(&r, t)), &c).unwrap();
        prop_assert!(x.agrees_with(&y));
    }

    #[test]
    fn derivation_law((b, a) in near_id(), f in prop::collection::vec(-5i64..5, 4), g in prop::collection::vec(-5i64..5, 4)) {
        let r = ring(3, 30);
        let psi = psi1(&r, 10, b, &a);
        let x = vector_field_log(&psi).unwrap();
        let mk = |c: &[i64]| s(&r, 1, 10, &[(&[0], c[0]), (&[1], c[1]), (&[2], c[2]), (&[3], c[3])]);
        let (f, g) = (mk(&f), mk(&g));
        let lhs = x.apply(&f.mul(&g).unwrap()).unwrap();
        let rhs = f.mul(&x.apply(&g).unwrap()).unwrap().add(&g.mul(&x.apply(&f).unwrap()).unwrap()).unwrap();
        prop_assert!(lhs.agrees_with(&rhs));
    }

    #[test]
    fn time_derivative_is_field((b, a) in near_id()) {
        let r = ring(3, 36);
        let psi = psi1(&r, 8, b, &a);
        let x = vector_field_log(&psi).unwrap();
        let p = iterate_tpoly(&psi, x.n()).unwrap();
        let lhs = p[0].deriv_t();
        let rhs = compose_into(x.comp(0), &p).unwrap();
        prop_assert!(lhs.coeff(0).n() >= 5 && lhs.coeff(1).n() >= 4);
        prop_assert!(lhs.agrees_with(&rhs));
        // the polynomial reproduces integer iterates
        let three = p[0].eval_t(&q(3, 1)).unwrap();
        prop_assert!(three.agrees_with(&psi.iterate(3).unwrap().comps()[0]));
    }

    #[test]
    fn flow_of_log_is_map((b, a) in near_id()) {
        let r = ring(3, 30);
        let psi = psi1(&r, 8, b, &a);
        let x = vector_field_log(&psi).unwrap();
        let h = flow_from_field(&x, &q(1, 1)).unwrap();
        prop_assert!(h.at(&Time::int(1)).unwrap().agrees_with(&psi));
    }

    #[test]
    fn flow_matches_interpolation(c in prop::collection::vec(-3i64..4, 8), t in -9i64..9) {
        let r = ring(3, 30);
        let psi = psi2(&r, 7, &c);
        let x = vector_field_log(&psi).unwrap();
        let h = flow_from_field(&x, &q(1, 1)).unwrap();
        let cert = certify(&psi, &q(1, 1)).unwrap();
        let a = h.at(&Time::Rational(q(t, 2))).unwrap();
        let b = interpolate_iterate(&psi, &Time::Rational(q(t, 2)), &cert).unwrap();
        prop_assert!(a.agrees_with(&b));
    }

    #[test]
    fn bracket_of_hamiltonians(h1 in prop::collection::vec(-4i64..5, 5), h2 in prop::collection::vec(-4i64..5, 5), u in prop::collection::vec(-3i64..4, 2)) {
        let r = ring(3, 30);
        let n = 8;
        let mk = |c: &[i64]| s(&r, 2, n, &[(&[2, 0], c[0]), (&[1, 1], c[1]), (&[0, 2], c[2]), (&[3, 0], c[3]), (&[1, 2], c[4])]);
        let unit = s(&r, 2, n, &[(&[0, 0], 1), (&[1, 0], u[0]), (&[0, 1], u[1])]);
        let w = DiffForm::from_components(&r, 2, 2, vec![(vec![0, 1], unit.clone())]).unwrap();
        let (hx, hy) = (mk(&h1), mk(&h2));
        let (x, y) = (hamiltonian(&r, &hx, &unit), hamiltonian(&r, &hy, &unit));
        let vx = hamiltonian_potential(&x, &w).unwrap();
        prop_assert!(vx.agrees_with(&hx));
        let pb = poisson(&x, &y, &w).unwrap();
        let lhs = exterior_d(&pb).neg();
        let rhs = contract(&field_bracket(&x, &y).unwrap(), &w).unwrap();
        prop_assert!(lhs.agrees_with(&rhs));
        prop_assert!(lie_derivative(&x, &w).unwrap().is_zero());
    }

    #[test]
    fn antisymmetric_bracket(c in prop::collection::vec(-3i64..4, 8), d in prop::collection::vec(-3i64..4, 8)) {
        let r = ring(3, 30);
        let x = VectorField::new(psi2(&r, 7, &c).comps().to_vec()).unwrap();
        let y = VectorField::new(psi2(&r, 7, &d).comps().to_vec()).unwrap();
        let a = field_bracket(&x, &y).unwrap();
        let b = field_bracket(&y, &x).unwrap();
        prop_assert!(a.add(&b).unwrap().is_zero());
    }
}
