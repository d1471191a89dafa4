use num_bigint::BigInt;
use num_rational::BigRational;
use padic_core::*;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn ring(ell: u64, prec: u32) -> Ring {
    Ring::from_spec(&RingSpec::new(ell, prec)).unwrap()
}

#[test]
fn digit_stats_examples() {
    assert_eq!(digit_stats(3, 10), (2, 3));
    assert_eq!(digit_stats(5, 0), (0, 0));
    assert_eq!(digit_stats(3, 26), (6, 3));
}

#[test]
fn factorial_valuation_examples() {
    assert_eq!(factorial_valuation(3, 10), 4);
    assert_eq!(factorial_valuation(7, 0), 0);
    assert_eq!(factorial_valuation(5, 30), 7);
}

#[test]
fn multinomial_bound_examples() {
    assert_eq!(multinomial_valuation(3, &[0, 0, 0, 0]), -1);
    assert!(multinomial_valuation_bound(3, &[0, 0, 0, 0]) <= -1);
    assert_eq!(multinomial_valuation(3, &[1, 0, 0, 0]), -1);
    assert!(multinomial_valuation_bound(3, &[1, 0, 0, 0]) <= -1);
    assert_eq!(multinomial_valuation(3, &[0]), 0);
    assert!(multinomial_valuation_bound(3, &[0]) <= 0);
}

#[test]
fn cap_n_examples() {
    let r = cap_n(3, &q(1, 1), &q(1, 1));
    assert_eq!(r.value, q(0, 1));
    assert_eq!(r.argmax, 1);
    let r = cap_n(3, &q(4, 1), &q(1, 1));
    assert_eq!(r.value, q(5, 1));
    assert_eq!(r.argmax, 3);
    let r = cap_n(5, &q(2, 1), &q(1000, 1));
    assert_eq!(r.value, q(-998, 1));
    assert_eq!(r.argmax, 1);
}

#[test]
fn teichmuller_examples() {
    let t = teichmuller(&ring(3, 2), 2).unwrap();
    assert_eq!(t.to_bigint().unwrap(), BigInt::from(8));
    let t = teichmuller(&ring(5, 2), 2).unwrap();
    assert_eq!(t.to_bigint().unwrap(), BigInt::from(7));
    let t = teichmuller(&ring(7, 6), 1).unwrap();
    assert_eq!(t.to_bigint().unwrap(), BigInt::from(1));
    assert_eq!(teichmuller(&ring(3, 4), 3), Err(PadicError::NotUnit));
}

#[test]
fn log_examples() {
    let r = ring(3, 4);
    let l4 = padic_log(&PadicScalar::from_int(&r, 4), None).unwrap();
    assert_eq!(l4.to_bigint().unwrap(), BigInt::from(48));
    assert!(l4.abs_prec() >= 4);
    let l1 = padic_log(&PadicScalar::one(&r), None).unwrap();
    assert!(l1.is_zero());
    let l2 = padic_log(&PadicScalar::from_int(&r, 2), None).unwrap();
    assert_eq!(l2.to_bigint().unwrap(), BigInt::from(24));
}

#[test]
fn log_precision_exhausted() {
    let r = ring(3, 4);
    let err = padic_log(&PadicScalar::from_int(&r, 4), Some(40)).unwrap_err();
    assert!(matches!(err, PadicError::PrecisionExhausted { .. }));
    assert_eq!(padic_log(&PadicScalar::from_int(&r, 3), None), Err(PadicError::NotUnit));
}

#[test]
fn hensel_examples() {
    let r = ring(3, 2);
    let a = hensel_root(2, &PadicScalar::from_int(&r, 4), 1).unwrap();
    assert_eq!(a.to_bigint().unwrap(), BigInt::from(7));
    let a = hensel_root(5, &PadicScalar::one(&r), 1).unwrap();
    assert_eq!(a.to_bigint().unwrap(), BigInt::from(1));
    let r = ring(3, 6);
    let a = hensel_root(2, &PadicScalar::one(&r), 2).unwrap();
    assert_eq!(a.to_bigint().unwrap(), BigInt::from(728));
    assert_eq!(hensel_root(3, &PadicScalar::one(&r), 1), Err(PadicError::BadExponent(3)));
    assert_eq!(hensel_root(2, &PadicScalar::from_int(&r, 2), 1), Err(PadicError::NoRoot));
}

#[test]
fn ring_spec_json() {
    let s = RingSpec::new(3, 12);
    assert_eq!(serde_json::to_string(&s).unwrap(), r#"{"ell":3,"e":1,"P":12}"#);
    let back: RingSpec = serde_json::from_str(r#"{"ell":3,"e":1,"P":12}"#).unwrap();
    assert_eq!(back, s);
}

#[test]
fn invalid_rings() {
    assert!(Ring::from_spec(&RingSpec::new(2, 5)).is_err());
    assert!(Ring::from_spec(&RingSpec::new(9, 5)).is_err());
    assert!(Ring::from_spec(&RingSpec::new(3, 0)).is_err());
    assert!(Ring::from_spec(&RingSpec::ramified(3, vec![9, 3], 4)).is_err());
    assert!(Ring::from_spec(&RingSpec::ramified(3, vec![3, 1], 4)).is_err());
    assert!(Ring::from_spec(&RingSpec::new(3, 200)).is_err());
}

#[test]
fn wire_format() {
    let r = ring(3, 5);
    let x = PadicScalar::from_rational(&r, &q(9, 2));
    assert_eq!(x.to_wire(), "w:2 u:122 mod l^7");
    let back = PadicScalar::from_wire(&r, &x.to_wire()).unwrap();
    assert_eq!(back, x);
    let y = PadicScalar::from_rational(&r, &q(1, 3));
    assert_eq!(y.w(), -1);
    assert_eq!(PadicScalar::from_wire(&r, &y.to_wire()).unwrap(), y);
}

#[test]
fn eisenstein_cube_roots() {
    // π = 1 - ζ_3 is a root of x^2 - 3x + 3
    let r = Ring::from_spec(&RingSpec::ramified(3, vec![3, -3], 8)).unwrap();
    let pi = r.pi();
    let zeta = r.sub(r.one(), pi);
    let s = r.add(r.add(r.mul(zeta, zeta), zeta), r.one());
    assert!(s.is_zero());
    assert_eq!(r.pow(zeta, 3), r.one());
    assert_eq!(r.valuation(r.from_u64(3)), 2);
    assert_eq!(r.valuation(pi), 1);
    let three = PadicScalar::from_int(&r, 3);
    assert_eq!(three.valuation(), q(1, 1));
    assert_eq!(three.w(), 2);
    let inv = three.inv().unwrap();
    assert!(inv.mul(&three).agrees_with(&PadicScalar::one(&r)));
}

#[test]
fn matrix_inverse_and_det() {
    let r = ring(3, 6);
    let m = Mat::from_rows(&r, &[vec![2, 1, 0], vec![0, 2, 1], vec![1, 0, 2]]).unwrap();
    let d = m.det(&r).unwrap();
    assert_eq!(r.to_u64(d), 9);
    assert!(m.inv(&r).is_err());
    let a = Mat::from_rows(&r, &[vec![2, 1], vec![0, 2]]).unwrap();
    let ai = a.inv(&r).unwrap();
    assert!(a.mul(&r, &ai).unwrap().is_identity(&r));
    assert_eq!(r.to_u64(a.trace(&r)), 4);
}
