mod common;

use bar_chains::{boundary, homotopy, inn, BarChain, MatrixGroup, Modulus};
use common::*;
use num_rational::BigRational;
use padic_core::{padic_log, rational_valuation, Mat, PadicScalar, Ring, EXACT};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use regulator::engine::MonoTable;
use regulator::*;

fn scalar(r: &Ring, q: &BigRational) -> PadicScalar {
    PadicScalar::from_rational(r, q)
}

fn conj_all(r: &Ring, g: &Mat, xs: &[Mat]) -> Vec<Mat> {
    let gi = g.inv(r).unwrap();
    xs.iter().map(|x| g.mul(r, x).unwrap().mul(r, &gi).unwrap()).collect()
}

#[test]
fn monomial_tables() {
    let t = MonoTable::get(3, 2);
    assert_eq!(t.len(), 10);
    assert_eq!(t.monos[0], vec![0, 0, 0]);
    assert_eq!(t.monos[1], vec![1, 0, 0]);
    // every ordered pair of monomials with degree sum ≤ 2 appears once
    let pairs: usize = t.by_out.iter().map(|p| p.len()).sum();
    assert_eq!(pairs, 1 + 2 * 3 + 2 * 6 + 9);
    assert_eq!(MonoTable::get(3, 13).len(), 560);
    assert_eq!(MonoTable::get(1, 5).len(), 6);
}

#[test]
fn zero_inputs() {
    let r = ring(3, 6);
    let z = vec![Mat::zeros(2, 2); 4];
    let v = phi_s(&r, &z, 3, 5).unwrap();
    assert!(v.value.is_zero());
    assert_eq!(v.certified_abs, EXACT);
    assert_eq!(v.to_json().certified_error, "exact");
    let t = t_expansion(&r, &z, 3, 2).unwrap();
    assert_eq!(t.coeffs.len(), 10);
    assert!(t.coeffs.iter().all(|(_, m)| m.data.iter().all(|x| x.is_zero())));

    let id = vec![Mat::identity(&r, 2); 4];
    assert!(phi_tilde(&r, &id, 3, 5).unwrap().value.is_zero());
    assert!(psi_transfer(&r, &id, 3, 5).unwrap().value.is_zero());

    let mg = MatrixGroup::new(&r, 2);
    let zero = BarChain::zero(3, Modulus::new(3, 6).unwrap());
    let v = evaluate_chain(&zero, &mg, 5).unwrap();
    assert!(v.value.is_zero() && v.certified_abs == EXACT);
}

#[test]
fn input_errors() {
    let r = ring(3, 6);
    let unit = mat(&r, &[&[1, 0], &[0, 0]]);
    let z = Mat::zeros(2, 2);
    assert!(matches!(phi_s(&r, &[unit.clone(), z.clone(), z.clone(), z.clone()], 3, 4), Err(RegError::DepthZero)));
    assert!(matches!(t_expansion(&r, &[unit, z.clone(), z.clone(), z.clone()], 3, 4), Err(RegError::DepthZero)));
    assert!(matches!(phi_s(&r, &[z.clone(), z.clone(), z.clone()], 2, 4), Err(RegError::BadTuple(_))));
    assert!(matches!(phi_s(&r, &[z.clone(), z.clone()], 3, 4), Err(RegError::BadTuple(_))));
    let i = Mat::identity(&r, 2);
    let two = mat(&r, &[&[2, 0], &[0, 1]]);
    assert!(matches!(phi_tilde(&r, &[i.clone(), i.clone(), two, i.clone()], 3, 4), Err(RegError::NotInK1(2))));
    let sing = mat(&r, &[&[1, 1], &[1, 1]]);
    assert!(matches!(psi_transfer(&r, &[i.clone(), sing, i.clone(), i.clone()], 3, 4), Err(RegError::BadTuple(_))));
    let r4 = Mat::identity(&r, 4);
    let c = mat(&r, &[&[0, -1], &[1, -1]]);
    let mut big = r4.clone();
    big.set(0, 0, r.zero());
    big.set(0, 1, r.from_i64(-1));
    big.set(1, 0, r.one());
    big.set(1, 1, r.from_i64(-1));
    assert!(matches!(psi_transfer(&r, &[r4.clone(), big, r4.clone(), r4], 3, 4), Err(RegError::TooLarge(_))));
    let r11 = ring(11, 4);
    let c11 = mat(&r11, &[&[0, -1], &[1, -1]]);
    let i11 = Mat::identity(&r11, 2);
    assert!(matches!(psi_transfer(&r11, &[i11.clone(), c11, i11.clone(), i11], 3, 4), Err(RegError::TooLarge(_))));
    let v = phi_tilde(&r, &[i.clone(), i.clone(), i.clone(), c.pow(&r, 3).unwrap()], 3, 1).unwrap();
    assert!(v.require(10).is_ok());
    let g = mat(&r, &[&[4, 3], &[0, 1]]);
    let v = phi_tilde(&r, &[i.clone(), g.clone(), g.pow(&r, 2).unwrap(), mat(&r, &[&[1, 0], &[3, 1]])], 3, 2).unwrap();
    assert!(matches!(v.require(50), Err(RegError::PrecisionExhausted { .. })));
}

#[test]
fn residue_groups() {
    assert_eq!(gl_residue_group(3, 1).unwrap().len(), 2);
    assert_eq!(gl_residue_group(3, 2).unwrap().len(), 48);
    assert_eq!(gl_residue_group(3, 3).unwrap().len(), 11232);
    assert_eq!(gl_residue_group(5, 2).unwrap().len(), 480);
    assert_eq!(gl_residue_group(7, 2).unwrap().len(), 2016);
    assert!(gl_residue_group(5, 3).is_err());
}

#[test]
fn phi3_matches_rational_oracle() {
    let r = ring(3, 6);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..3 {
        let gi: Vec<Vec<Vec<i64>>> = (0..4).map(|_| k1_int(&mut rng, 3, 1, 2)).collect();
        let gs: Vec<Mat> = gi.iter().map(|g| to_mat(&r, g)).collect();
        let (v, b) = phi_partial(&r, &k1_shift(&r, &gs).unwrap(), 3, 6).unwrap().unwrap();
        assert_eq!(b, 1);
        assert!(v.abs_prec() >= 6);
        assert!(v.agrees_with(&scalar(&r, &oracle_phi(&gi, 6))));
    }
    // ramification index 1 with a larger prime
    let r7 = ring(7, 5);
    let gi: Vec<Vec<Vec<i64>>> = (0..4).map(|_| k1_int(&mut rng, 7, 1, 2)).collect();
    let gs: Vec<Mat> = gi.iter().map(|g| to_mat(&r7, g)).collect();
    let (v, _) = phi_partial(&r7, &k1_shift(&r7, &gs).unwrap(), 3, 4).unwrap().unwrap();
    assert!(v.agrees_with(&scalar(&r7, &oracle_phi(&gi, 4))));
}

#[test]
fn t_expansion_matches_oracle() {
    let r = ring(3, 8);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let gi: Vec<Vec<Vec<i64>>> = (0..4).map(|_| k1_int(&mut rng, 3, 1, 2)).collect();
    let gs: Vec<Mat> = gi.iter().map(|g| to_mat(&r, g)).collect();
    let t = t_expansion(&r, &k1_shift(&r, &gs).unwrap(), 3, 3).unwrap();
    let top = oracle_top(&gi, 3);
    assert_eq!(t.depth, 1);
    for (a, m) in &t.coeffs {
        let want = &top[a];
        for i in 0..2 {
            for j in 0..2 {
                let got = PadicScalar::from_elt_to(&t.ring, m.get(i, j), r.prec() as i64);
                assert!(got.agrees_with(&scalar(&t.ring, &want[i][j])), "a = {a:?}");
            }
        }
        // T'_a ∈ Mat(𝔩^{b(|a|+s)})
        let deg: u32 = a.iter().sum();
        assert!(m.min_valuation(&t.ring) >= (deg + 3).min(t.ring.prec()));
    }

    // scalars commute, so the cube of the form vanishes
    let gi: Vec<Vec<Vec<i64>>> = (0..4).map(|_| k1_int(&mut rng, 3, 1, 1)).collect();
    let gs: Vec<Mat> = gi.iter().map(|g| to_mat(&r, g)).collect();
    let t = t_expansion(&r, &k1_shift(&r, &gs).unwrap(), 3, 2).unwrap();
    let top = oracle_top(&gi, 2);
    assert!(top.values().all(|m| m[0][0] == BigRational::from_integer(0.into())));
    assert!(t.coeffs.iter().all(|(_, m)| m.get(0, 0).is_zero()));
    let v = phi_tilde(&r, &gs, 3, 8).unwrap();
    assert!(v.value.is_zero());
}

#[test]
fn tail_bounds() {
    for (ell, e, s, b) in [(3u64, 1u32, 3usize, 1u32), (3, 1, 3, 2), (3, 2, 3, 1), (5, 1, 3, 1), (3, 1, 5, 1), (7, 1, 1, 1)] {
        for c in 0..30u32 {
            let got = tail_bound(ell, e, s, b, c);
            let want = brute_tail(ell, e as i64, s as u64, b as i64, c as u64);
            assert_eq!(got, BigRational::from_integer(want.into()), "{ell} {e} {s} {b} {c}");
        }
        for target in [1i64, 4, 8] {
            let c = min_cutoff(ell, e, s, b, target);
            assert!(brute_tail(ell, e as i64, s as u64, b as i64, c as u64) >= target);
            assert!(c == 0 || brute_tail(ell, e as i64, s as u64, b as i64, c as u64 - 1) < target);
        }
    }
    assert_eq!(min_cutoff(3, 1, 3, 1, 4), 13);
    assert_eq!(min_cutoff(3, 1, 3, 2, 4), 3);
}

#[test]
fn truncation_tail_is_certified() {
    // the exact terms with cutoff < |a| ≤ 8 all have valuation ≥ the tail bound
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for b in [1u32, 2] {
        let gi: Vec<Vec<Vec<i64>>> = (0..4).map(|_| k1_int(&mut rng, 3, b, 2)).collect();
        let hi = oracle_phi(&gi, 8);
        for c in [2u32, 4] {
            let diff = &hi - oracle_phi(&gi, c);
            let t = tail_bound(3, 1, 3, b, c);
            assert!(BigRational::from_integer(rational_valuation(&diff, 3).into()) >= t, "b = {b}, c = {c}");
        }
    }
}

#[test]
fn degree_one_is_log_det() {
    // Φ_1(g_0, g_1) = -Tr log(g_1⁻¹g_0) = log det g_1 - log det g_0
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for r in [ring(3, 20), zeta_ring(20), ring(5, 12)] {
        for _ in 0..3 {
            let gs: Vec<Mat> = (0..2).map(|_| random_k1(&r, &mut rng, 1, 2)).collect();
            let v = phi_tilde(&r, &gs, 1, min_cutoff(r.ell(), r.e(), 1, 1, 10)).unwrap();
            assert!(v.certified_abs >= 10);
            let ld = |g: &Mat| padic_log(&PadicScalar::from_elt(&r, g.det(&r).unwrap()), None).unwrap();
            let want = ld(&gs[1]).sub(&ld(&gs[0]));
            assert!(v.value.agrees_with(&want));
        }
    }
}

#[test]
fn equal_adjacent_entries() {
    let r = ring(3, 6);
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let c = min_cutoff(3, 1, 3, 1, 4);
    for k in 0..3 {
        let mut gs: Vec<Mat> = (0..4).map(|_| random_k1(&r, &mut rng, 1, 2)).collect();
        gs[k + 1] = gs[k].clone();
        let v = phi_tilde(&r, &gs, 3, c).unwrap();
        assert!(v.certified_abs >= 4);
        assert!(v.is_certified_zero());
    }
}

#[test]
fn invariance_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for r in [ring(3, 6), zeta_ring(8)] {
        let c = min_cutoff(3, r.e(), 3, 1, 4);
        let gs: Vec<Mat> = (0..4).map(|_| random_k1(&r, &mut rng, 1, 2)).collect();
        let base = phi_tilde(&r, &gs, 3, c).unwrap();
        assert!(base.certified_abs >= 4);
        assert!(!base.is_certified_zero());
        let h = random_k1(&r, &mut rng, 1, 2);
        let left: Vec<Mat> = gs.iter().map(|g| h.mul(&r, g).unwrap()).collect();
        assert!(phi_tilde(&r, &left, 3, c).unwrap().value.agrees_with(&base.value));
        let right: Vec<Mat> = gs.iter().map(|g| g.mul(&r, &h).unwrap()).collect();
        assert!(phi_tilde(&r, &right, 3, c).unwrap().value.agrees_with(&base.value));
        let g = random_gl(&r, &mut rng, 2);
        assert!(phi_tilde(&r, &conj_all(&r, &g, &gs), 3, c).unwrap().value.agrees_with(&base.value));
        // a transposition that moves the eliminated vertex
        let swapped = vec![gs[0].clone(), gs[1].clone(), gs[3].clone(), gs[2].clone()];
        assert!(phi_tilde(&r, &swapped, 3, c).unwrap().value.agrees_with(&base.value.neg()));
    }
}

#[test]
fn transfer_on_kernel_tuples() {
    let r = ring(3, 5);
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let gs: Vec<Mat> = (0..4).map(|_| random_k1(&r, &mut rng, 1, 2)).collect();
    let a = psi_transfer(&r, &gs, 3, 13).unwrap();
    let b = phi_tilde(&r, &gs, 3, 13).unwrap();
    assert_eq!(a, b);
}

#[test]
fn transfer_left_invariance() {
    let r = ring(3, 5);
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let gs: Vec<Mat> = (0..4).map(|_| random_gl(&r, &mut rng, 2)).collect();
    let base = psi_transfer(&r, &gs, 3, 13).unwrap();
    assert!(base.certified_abs >= 3);
    let k = random_gl(&r, &mut rng, 2);
    let moved: Vec<Mat> = gs.iter().map(|g| k.mul(&r, g).unwrap()).collect();
    let v = psi_transfer(&r, &moved, 3, 13).unwrap();
    assert_eq!(v.value, base.value);
}

#[test]
fn transfer_conjugation_up_to_homotopy() {
    // Ψ(inn_g c) - Ψ(c) = Ψ(F_g ∂c) + Ψ(∂F_g c), and the last term vanishes
    let r = ring(3, 5);
    let m = Modulus::new(3, 5).unwrap();
    for seed in [32, 34] {
        let mg = MatrixGroup::new(&r, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let els: Vec<u32> = (0..3).map(|_| mg.intern(&random_gl(&r, &mut rng, 2)).unwrap()).collect();
        let g = mg.intern(&random_gl(&r, &mut rng, 2)).unwrap();
        let c = BarChain::from_terms(3, m, &[(&els[..], 1)]).unwrap();
        let lhs = evaluate_chain(&inn(&c, g, &mg), &mg, 13).unwrap();
        let base = evaluate_chain(&c, &mg, 13).unwrap();
        let corr = evaluate_chain(&homotopy(&boundary(&c, &mg), g, &mg), &mg, 13).unwrap();
        let cert = lhs.certified_abs.min(base.certified_abs).min(corr.certified_abs);
        assert!(cert >= 2);
        // these tuples are not conjugation invariant on the nose
        assert!(!corr.is_certified_zero());
        assert!(lhs.value.sub(&base.value).truncate(cert).agrees_with(&corr.value.truncate(cert)));
    }
}

#[test]
fn chain_boundaries_vanish() {
    let r = ring(3, 5);
    let m = Modulus::new(3, 5).unwrap();
    let mg = MatrixGroup::new(&r, 2);
    let a = mg.intern(&mat(&r, &[&[2, 1], &[0, 2]])).unwrap();
    let b = mg.intern(&mat(&r, &[&[1, 0], &[1, -1]])).unwrap();
    let k = mg.intern(&mat(&r, &[&[4, 3], &[3, 1]])).unwrap();
    let w = BarChain::from_terms(4, m, &[(&[a, b, k, a], 1), (&[k, k, b, a], -2)]).unwrap();
    let v = evaluate_chain(&boundary(&w, &mg), &mg, 13).unwrap();
    assert!(v.certified_abs >= 2);
    assert!(v.is_certified_zero());
}

#[test]
fn decomposable_vanishing() {
    let r = ring(3, 5);
    let m = Modulus::new(3, 5).unwrap();
    let a = mat(&r, &[&[2, 1], &[0, 2]]);
    let mg = MatrixGroup::new(&r, 2);
    let ia = mg.intern(&a).unwrap();
    let ib = mg.intern(&a.pow(&r, 2).unwrap()).unwrap();
    let ih = mg.intern(&a.pow(&r, 4).unwrap()).unwrap();
    let z = BarChain::from_terms(2, m, &[(&[ia, ib], 1), (&[ib, ia], -1)]).unwrap();
    let f = homotopy(&z, ih, &mg);
    let v = evaluate_chain(&f, &mg, 13).unwrap();
    assert!(v.certified_abs >= 2);
    assert!(v.is_certified_zero());
    // the vanishing is a cancellation, not a term-by-term zero
}
