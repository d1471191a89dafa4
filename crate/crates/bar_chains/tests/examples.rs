mod common;

use bar_chains::*;
use common::*;
use padic_core::Mat;

#[test]
fn modulus_arithmetic() {
    let m = md(3, 4);
    assert_eq!(m.value(), 81);
    assert_eq!(m.inv(2), Some(41));
    assert_eq!(m.inv(6), None);
    assert_eq!(m.split(54), Some((3, 2)));
    assert_eq!(Modulus::parse("3^4").unwrap(), m);
    assert!(Modulus::new(4, 2).is_err());
    assert!(Modulus::new(3, 40).is_err());
}

#[test]
fn group_constructors() {
    let g = s3();
    assert_eq!(g.order(), 6);
    for a in g.elements() {
        assert_eq!(g.mul(a, g.inv(a)), 0);
    }
    // S_3 is not abelian
    assert!(g.elements().any(|a| g.elements().any(|b| g.mul(a, b) != g.mul(b, a))));
    let z = z33();
    assert_eq!(z.label(A), "a");
    assert_eq!(z.label(B), "b");
    assert_eq!(z.label(z.mul(A, B)), "ab");
    assert_eq!(FiniteGroup::abelian_generator(&[3, 3], 1), B);
    let bad = vec![vec![0, 1], vec![1, 1]];
    assert!(matches!(FiniteGroup::from_table(bad, vec![]), Err(ChainError::InvalidGroup(_))));
    let spec: GroupSpec = serde_json::from_str(r#"{"abelian":[3,3]}"#).unwrap();
    assert_eq!(FiniteGroup::from_spec(&spec).unwrap().order(), 9);
}

#[test]
fn automorphisms() {
    let g = z33();
    let swap = GroupAutomorphism::from_generator_images(&g, &[A, B], &[B, A]).unwrap();
    assert_eq!(swap.apply(g.mul(A, A)), g.mul(B, B));
    assert_eq!(swap.compose(&swap), GroupAutomorphism::identity(&g));
    // a ↦ a, b ↦ a is not injective
    assert!(GroupAutomorphism::from_generator_images(&g, &[A, B], &[A, A]).is_err());
    let s = s3();
    let inner = GroupAutomorphism::inner(&s, 1);
    assert_eq!(inner.compose(&inner.inverse()), GroupAutomorphism::identity(&s));
}

#[test]
fn boundary_examples() {
    let m = md(3, 2);
    let g = z33();
    assert!(boundary(&BarChain::basis(&[A], m), &g).is_zero());
    let ab = g.mul(A, B);
    let want = BarChain::from_terms(1, m, &[(&[B], 1), (&[ab], -1), (&[A], 1)]).unwrap();
    assert_eq!(boundary(&BarChain::basis(&[A, B], m), &g), want);
    assert!(boundary(&commutator_cycle(m), &g).is_zero());
    // ∂[g|g|g] = [g|g] - [g²|g] + [g|g²] - [g|g]
    let s = s3();
    let g2 = s.mul(1, 1);
    let want = BarChain::from_terms(2, m, &[(&[g2, 1], -1), (&[1, g2], 1)]).unwrap();
    assert_eq!(boundary(&BarChain::basis(&[1, 1, 1], m), &s), want);
}

#[test]
fn homotopy_examples() {
    let m = md(3, 2);
    let s = s3();
    let h = 3;
    let hi = s.inv(h);
    let empty = BarChain::basis(&[], m);
    assert_eq!(homotopy(&empty, h, &s), BarChain::basis(&[hi], m));
    let g = 1;
    let want = BarChain::from_terms(2, m, &[(&[hi, s.conj(h, g)], 1), (&[g, hi], -1)]).unwrap();
    assert_eq!(homotopy(&BarChain::basis(&[g], m), h, &s), want);
    // F_1 on [g] is [1|g] - [g|1]
    let f1 = homotopy(&BarChain::basis(&[g], m), 0, &s);
    assert_eq!(f1, BarChain::from_terms(2, m, &[(&[0, g], 1), (&[g, 0], -1)]).unwrap());
}

/// inn_h(c) - c = F_h(∂c) + ∂F_h(c) on every basis chain of degree ≤ 3.
fn check_homotopy(g: &FiniteGroup, m: Modulus) {
    for n in 0..=3 {
        for t in tuples(g.order(), n) {
            let c = BarChain::basis(&t, m);
            for h in g.elements() {
                let lhs = inn(&c, h, g).sub(&c).unwrap();
                let mut rhs = boundary(&homotopy(&c, h, g), g);
                if n > 0 {
                    rhs = rhs.add(&homotopy(&boundary(&c, g), h, g)).unwrap();
                }
                assert_eq!(lhs, rhs, "t = {t:?}, h = {h}");
            }
        }
    }
}

#[test]
fn homotopy_identity_exhaustive() {
    check_homotopy(&s3(), md(3, 2));
    check_homotopy(&z33(), md(3, 2));
}

/// D = F_{hh'} - F_h∘inn_{h'} - F_{h'} sends cycles to boundaries.
#[test]
fn homotopy_composition_s3() {
    let g = s3();
    let m = md(3, 2);
    let cache = SolverCache::new(&g);
    let mut cycles: Vec<BarChain> = Vec::new();
    for n in 0..=1 {
        cycles.extend(tuples(g.order(), n).map(|t| BarChain::basis(&t, m)));
    }
    for t in tuples(g.order(), 3).step_by(7) {
        cycles.push(boundary(&BarChain::basis(&t, m), &g));
    }
    // 3·Σ_i [c|c^i] for the 3-cycle c, a cycle mod 9 that is no boundary of a basis chain
    let (c, c2) = (3, g.mul(3, 3));
    cycles.push(BarChain::from_terms(2, m, &[(&[c, 0], 3), (&[c, c], 3), (&[c, c2], 3)]).unwrap());
    let mut solved = 0;
    for c in &cycles {
        if c.degree() > 0 && !boundary(c, &g).is_zero() {
            continue;
        }
        for h in g.elements() {
            for h2 in g.elements() {
                let d = homotopy(c, g.mul(h, h2), &g)
                    .sub(&homotopy(&inn(c, h2, &g), h, &g))
                    .unwrap()
                    .sub(&homotopy(c, h2, &g))
                    .unwrap();
                let w = cache.solve_boundary(&d).unwrap();
                assert_eq!(boundary(&w, &g), d);
                solved += 1;
            }
        }
    }
    assert_eq!(solved, 39 * 36);
}

/// The bilinear 2-cocycle f(x, y) = x_1·y_2 vanishes on boundaries.
fn bilinear(z: &BarChain) -> u64 {
    let m = z.modulus();
    z.terms().fold(0, |acc, (t, c)| m.add(acc, m.mul(c, ((t[0] % 3) * (t[1] / 3)) as u64)))
}

#[test]
fn solve_examples() {
    let g = z33();
    let m = md(3, 1);
    let z = commutator_cycle(m);
    assert_eq!(bilinear(&z), 1);
    assert!(matches!(solve_boundary(&g, &z), Err(ChainError::NoSolution)));
    let z9 = commutator_cycle(md(3, 2));
    assert!(matches!(solve_boundary(&g, &z9), Err(ChainError::NoSolution)));
    // the integral class has order 3, so 3·z is a boundary
    let d = solve_boundary(&g, &z9.scale(3)).unwrap();
    assert_eq!(boundary(&d, &g), z9.scale(3));
    let not_cycle = BarChain::basis(&[A, B], m);
    assert!(matches!(solve_boundary(&g, &not_cycle), Err(ChainError::NotACycle)));
    let d0 = BarChain::from_terms(3, md(3, 2), &[(&[A, B, A], 2), (&[B, B, 4], -1), (&[8, 0, 5], 4)]).unwrap();
    let z = boundary(&d0, &g);
    let d = solve_boundary(&g, &z).unwrap();
    assert_eq!(boundary(&d, &g), z);
    assert!(bilinear(&z) == 0);
    let big = FiniteGroup::abelian(&[7, 7, 7]).unwrap();
    let z = BarChain::zero(2, md(7, 1));
    assert!(matches!(solve_boundary(&big, &z), Err(ChainError::TooLarge(_))));
}

#[test]
fn homology_examples() {
    let m = md(3, 2);
    // universal coefficients: H_n(G; Z/9) = H_n(G) ⊗ Z/9 ⊕ Tor(H_{n-1}(G), Z/9)
    let h = homology_divisors(&FiniteGroup::abelian(&[3]).unwrap(), 2, m).unwrap();
    assert_eq!(h, Homology { divisors: vec![], tor_divisors: vec![3], saturated: 0 });
    let h = homology_divisors(&z33(), 2, m).unwrap();
    assert_eq!(h, Homology { divisors: vec![3], tor_divisors: vec![3, 3], saturated: 0 });
    let h = homology_divisors(&z33(), 1, m).unwrap();
    assert_eq!(h, Homology { divisors: vec![3, 3], tor_divisors: vec![], saturated: 0 });
    let h = homology_divisors(&s3(), 3, m).unwrap();
    assert_eq!(h, Homology { divisors: vec![3], tor_divisors: vec![], saturated: 0 });
    let h = homology_divisors(&s3(), 0, m).unwrap();
    assert_eq!(h, Homology { divisors: vec![], tor_divisors: vec![], saturated: 1 });
    let triv = FiniteGroup::abelian(&[1]).unwrap();
    for n in 1..=4 {
        assert_eq!(homology_divisors(&triv, n, m).unwrap(), Homology { divisors: vec![], tor_divisors: vec![], saturated: 0 });
    }
}

#[test]
fn smith_examples() {
    let m = md(3, 3);
    let a = vec![vec![3, 6], vec![9, 9]];
    let mut v = smith_valuations(&m, a);
    v.sort();
    // det = 27 - 54 = -27, gcd of entries 3
    assert_eq!(v, vec![1, 2]);
    assert_eq!(smith_valuations(&m, vec![vec![0, 0]]), Vec::<u32>::new());
}

#[test]
fn matrix_group_chains() {
    let r = ring(3, 4);
    let mg = MatrixGroup::new(&r, 2);
    let c = mg.intern(&c3(&r)).unwrap();
    assert_eq!(mg.mul(c, mg.mul(c, c)), 0);
    assert_eq!(mg.inv(c), mg.mul(c, c));
    assert!(mg.intern(&Mat::from_rows(&r, &[vec![3, 0], vec![0, 1]]).unwrap()).is_err());

    let g = FiniteGroup::abelian(&[3]).unwrap();
    let rep = MatrixRep::from_generators(&g, &r, &[1], &[c3(&r)]).unwrap();
    let m = md(3, 4);
    let chain = BarChain::from_terms(3, m, &[(&[1, 2, 1], 1), (&[2, 2, 0], -3)]).unwrap();
    let lhs = rep.map_chain(&boundary(&chain, &g), &mg).unwrap();
    let rhs = boundary(&rep.map_chain(&chain, &mg).unwrap(), &mg);
    assert_eq!(lhs, rhs);
    let bad = MatrixRep::from_generators(&g, &r, &[1], &[Mat::from_rows(&r, &[vec![1, 1], vec![0, 1]]).unwrap()]);
    assert!(matches!(bad, Err(ChainError::NotAHomomorphism(_, _))));
}

#[test]
fn chain_json_round_trip() {
    let m = md(3, 4);
    let c = BarChain::from_terms(2, m, &[(&[1, 3], 5), (&[3, 1], -1)]).unwrap();
    let j = serde_json::to_string(&c.to_json()).unwrap();
    assert!(j.contains("\"mod\":\"3^4\""));
    let back = BarChain::from_json(&serde_json::from_str(&j).unwrap()).unwrap();
    assert_eq!(back, c);
    assert_eq!(c.format(&z33()), "5[a|b] + -1[b|a]");
}

/// ρ_0(a) = C, ρ_0(b) = 1 on (Z/3)² over Z/81, with cocycles from values on a
/// and b satisfying the relations.
fn deformation_setup() -> (FiniteGroup, MatrixRep, Vec<AdCocycle>) {
    let r = ring(3, 4);
    let g = z33();
    let rep = MatrixRep::from_generators(&g, &r, &[A, B], &[c3(&r), Mat::identity(&r, 2)]).unwrap();
    let mut cocycles = Vec::new();
    // Y = 27·(2C + 1) is fixed by C and killed by 3
    let y = Mat::from_rows(&r, &[vec![27, -54], vec![54, -27]]).unwrap();
    for (x0, x1, x2) in [(1i64, 0i64, 0i64), (0, 1, 0), (2, 1, 5), (1, 1, -1)] {
        // X = Ad(a)Z - Z has norm zero, so c(a) = X, c(b) = λY is a cocycle
        let z = Mat::from_rows(&r, &[vec![x0, x1], vec![x2, -x0]]).unwrap();
        let cob = AdCocycle::coboundary(&g, &rep, &z).unwrap();
        let x = cob.value(A).clone();
        for lam in [0i64, 1, 2] {
            let vals = [x.clone(), y.scale(&r, r.from_i64(lam))];
            if let Ok(c) = AdCocycle::from_generators(&g, &rep, &[A, B], &vals) {
                cocycles.push(c);
            }
        }
    }
    (g, rep, cocycles)
}

#[test]
fn cup_pair_examples() {
    let (g, rep, cs) = deformation_setup();
    let r = rep.ring().clone();
    let m = md(3, 4);
    let z = commutator_cycle(m);
    // 27·Σ_i [a|a^i] is a cycle mod 81 coming from Tor(H_1, Z/81)
    let a2 = g.mul(A, A);
    let ztor = BarChain::from_terms(2, m, &[(&[A, 0], 27), (&[A, A], 27), (&[A, a2], 27)]).unwrap();
    assert!(boundary(&ztor, &g).is_zero());
    assert!(cs.len() >= 6);
    let mut nonzero = 0;
    for c1 in &cs {
        for c2 in &cs {
            for cyc in [&z, &ztor] {
                let v = cup_pair(&g, &rep, c1, c2, cyc).unwrap();
                let w = cup_pair(&g, &rep, c2, c1, cyc).unwrap();
                assert_eq!(r.add(v, w), r.zero());
                if !v.is_zero() {
                    nonzero += 1;
                }
            }
        }
    }
    assert_eq!(nonzero, 0);
    // the pairing itself is a nonzero 2-cocycle
    let mut values = 0;
    for c1 in &cs {
        for c2 in &cs {
            for t in tuples(9, 3) {
                let f = |a, b| cup_cochain(&g, &rep, c1, c2, a, b).unwrap();
                let ab = g.mul(t[0], t[1]);
                let bc = g.mul(t[1], t[2]);
                let s = r.add(r.sub(f(t[1], t[2]), f(ab, t[2])), r.sub(f(t[0], bc), f(t[0], t[1])));
                assert!(s.is_zero());
                if !f(t[0], t[1]).is_zero() {
                    values += 1;
                }
            }
        }
    }
    assert!(values > 0);
    let x = Mat::from_rows(&r, &[vec![1, 2], vec![0, -1]]).unwrap();
    let cob = AdCocycle::coboundary(&g, &rep, &x).unwrap();
    for c in &cs {
        assert!(cup_pair(&g, &rep, &cob, c, &z).unwrap().is_zero());
    }
    let bad = BarChain::basis(&[A, B], m);
    assert!(matches!(cup_pair(&g, &rep, &cs[0], &cs[0], &bad), Err(ChainError::NotACycle)));
    let not = rep.image(A).clone();
    assert!(matches!(AdCocycle::from_generators(&g, &rep, &[A, B], &[not.clone(), not]), Err(ChainError::NotACocycle(_, _))));
}
