mod common;

use common::*;
use padic_core::{Mat, Ring};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use regulator::*;

fn tuple(r: &Ring, seed: u64, n: usize, b: u32) -> Vec<Mat> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| random_k1(r, &mut rng, b, 2)).collect()
}

fn cut(r: &Ring) -> u32 {
    min_cutoff(r.ell(), r.e(), 3, 1, 4)
}

fn perm_sign(p: &[usize]) -> bool {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    inv % 2 == 1
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn cocycle_identity(seed in any::<u64>()) {
        let r = ring(3, 6);
        let gs = tuple(&r, seed, 5, 1);
        let c = cut(&r);
        let mut acc = padic_core::PadicScalar::zero_to(&r, padic_core::EXACT);
        let mut cert = padic_core::EXACT;
        for i in 0..5 {
            let face: Vec<Mat> = gs.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
            let v = psi_transfer(&r, &face, 3, c).unwrap();
            cert = cert.min(v.certified_abs);
            acc = if i % 2 == 0 { acc.add(&v.value) } else { acc.sub(&v.value) };
        }
        prop_assert!(cert >= 4);
        prop_assert!(acc.truncate(cert).is_zero());
    }

    #[test]
    fn bi_invariance(seed in any::<u64>()) {
        let r = ring(3, 6);
        let gs = tuple(&r, seed, 5, 1);
        let (h, gs) = (gs[4].clone(), &gs[..4]);
        let c = cut(&r);
        let base = phi_tilde(&r, gs, 3, c).unwrap();
        let left: Vec<Mat> = gs.iter().map(|g| h.mul(&r, g).unwrap()).collect();
        let right: Vec<Mat> = gs.iter().map(|g| g.mul(&r, &h).unwrap()).collect();
        prop_assert!(phi_tilde(&r, &left, 3, c).unwrap().value.agrees_with(&base.value));
        prop_assert!(phi_tilde(&r, &right, 3, c).unwrap().value.agrees_with(&base.value));
    }

    #[test]
    fn conjugation_invariance(seed in any::<u64>()) {
        let r = zeta_ring(8);
        let gs = tuple(&r, seed, 4, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5a5a);
        let g = random_gl(&r, &mut rng, 2);
        let gi = g.inv(&r).unwrap();
        let conj: Vec<Mat> = gs.iter().map(|x| g.mul(&r, x).unwrap().mul(&r, &gi).unwrap()).collect();
        let c = cut(&r);
        let a = phi_tilde(&r, &gs, 3, c).unwrap();
        let b = phi_tilde(&r, &conj, 3, c).unwrap();
        prop_assert!(a.certified_abs >= 4);
        prop_assert!(a.value.agrees_with(&b.value));
    }

    #[test]
    fn alternating(seed in any::<u64>()) {
        let r = ring(3, 6);
        let gs = tuple(&r, seed, 4, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(seed.rotate_left(7));
        let mut p: Vec<usize> = (0..4).collect();
        p.shuffle(&mut rng);
        let permuted: Vec<Mat> = p.iter().map(|&i| gs[i].clone()).collect();
        let c = cut(&r);
        let a = phi_tilde(&r, &gs, 3, c).unwrap();
        let b = phi_tilde(&r, &permuted, 3, c).unwrap();
        let want = if perm_sign(&p) { a.value.neg() } else { a.value.clone() };
        prop_assert!(b.value.agrees_with(&want));
    }

    #[test]
    fn depth_sensitivity(seed in any::<u64>()) {
        let r = ring(3, 8);
        let mut last = i64::MIN;
        for b in 1..=3u32 {
            let gs = tuple(&r, seed, 4, b);
            let xs = k1_shift(&r, &gs).unwrap();
            let d = depth(&r, &xs);
            prop_assume!(d == b);
            let v = phi_s(&r, &xs, 3, 4).unwrap();
            prop_assert!(v.certified_abs > last);
            last = v.certified_abs;
        }
    }

    #[test]
    fn cutoff_consistency(seed in any::<u64>()) {
        let r = ring(3, 6);
        let gs = tuple(&r, seed, 4, 1);
        let a = phi_tilde(&r, &gs, 3, 13).unwrap();
        let b = phi_tilde(&r, &gs, 3, 16).unwrap();
        prop_assert!(b.certified_abs >= a.certified_abs);
        prop_assert!(a.value.agrees_with(&b.value));
    }

    #[test]
    fn input_fiber(seed in any::<u64>()) {
        // a different lift of the same residues mod 3^5 agrees at the certified precision
        let lo = ring(3, 5);
        let hi = ring(3, 9);
        let gs = tuple(&hi, seed, 4, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
        let shifted: Vec<Mat> = gs
            .iter()
            .map(|g| {
                let mut m = g.clone();
                for k in 0..4 {
                    let delta = hi.mul(hi.from_i64(rand::Rng::gen_range(&mut rng, -9..10)), hi.pow(hi.pi(), 5));
                    m.set(k / 2, k % 2, hi.add(m.get(k / 2, k % 2), delta));
                }
                m
            })
            .collect();
        let low: Vec<Mat> = gs.iter().map(|g| g.reduce(&hi, 5)).map(|g| Mat { data: g.data.iter().map(|&x| lo.from_coords(&hi.coords(x).iter().map(|&c| c as i64).collect::<Vec<_>>())).collect(), ..g }).collect();
        let c = cut(&lo);
        let v = phi_tilde(&lo, &low, 3, c).unwrap();
        let w = phi_tilde(&hi, &shifted, 3, c).unwrap();
        let w = rebase(&w.value, &lo);
        prop_assert!(v.value.agrees_with(&w.truncate(v.certified_abs)));
    }
}
