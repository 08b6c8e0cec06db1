use num_bigint::BigInt;
use proptest::prelude::*;
use tate_regulator::laurent::*;
use tate_regulator::padic::*;

fn q5(n: u32) -> FieldSpec {
    FieldSpec::qp(5, n).unwrap()
}

fn int(f: &FieldSpec, n: i64) -> PAdicElement {
    PAdicElement::from_int(f, n)
}

fn poly(f: &FieldSpec, lo: i64, cs: &[i64]) -> LaurentSeries {
    LaurentSeries::polynomial(f, lo, cs.iter().map(|&c| int(f, c)).collect())
}

#[test]
fn telescoping_product() {
    let k = q5(20);
    let b = 12;
    let f = poly(&k, 0, &[1, -1]);
    let g = poly(&k, 0, &vec![1; b + 1]);
    let h = laurent_arith(&f, &g, SeriesOp::Mul).unwrap();
    assert!(h.coeff(0).approx_eq(&int(&k, 1)));
    for i in 1..=b as i64 {
        assert!(h.coeff(i).is_exact_zero() || h.coeff(i).is_zero());
    }
    assert!(h.coeff(b as i64 + 1).approx_eq(&int(&k, -1)));
}

#[test]
fn geometric_inverse() {
    let k = q5(30);
    let q = int(&k, 125);
    let f = LaurentSeries::binomial(&q, 1).clip(0, 12);
    let inv = laurent_arith(&f, &f, SeriesOp::InvertUnit).unwrap();
    for i in 0..=12 {
        let c = inv.coeff(i);
        let expected = q.pow(i).unwrap();
        assert!((&c - &expected).is_zero(), "coefficient {i}");
        if i * 3 < 30 {
            assert_eq!(c.ord().unwrap(), 3 * i);
        }
    }
}

#[test]
fn non_unit_is_rejected() {
    let k = q5(10);
    let f = poly(&k, -1, &[1, 1]);
    assert!(!f.is_unit());
    assert_eq!(f.invert_unit().unwrap_err(), SeriesError::NotAUnit);
    let g = poly(&k, 0, &[5, 1]);
    assert!(!g.is_unit());
}

#[test]
fn residues_of_simple_series() {
    let k = q5(30);
    let q = int(&k, 125);
    let window = |s: LaurentSeries| s.clip(-10, 10);
    assert_eq!(residue_dlog(1, &LaurentSeries::one(&k).clip(-10, 10), 4).unwrap(), 1);
    assert_eq!(residue_dlog(0, &window(LaurentSeries::binomial(&q, 1)), 4).unwrap(), 0);
    assert_eq!(residue_dlog(0, &window(LaurentSeries::binomial(&q, -1)), 4).unwrap(), 0);
    assert_eq!(residue_dlog(0, &window(LaurentSeries::constant(&int(&k, 7))), 4).unwrap(), 0);
    assert_eq!(residue_dlog(-3, &window(LaurentSeries::constant(&int(&k, 7))), 4).unwrap(), 1);
}

#[test]
fn reduce_mod_power_threshold() {
    let k = q5(20);
    assert_eq!(power_threshold(&k, 2), 2 + 1 + 1);
    let pi = PAdicElement::uniformizer(&k);
    let g = BinomialFactor::new(int(&k, 3), 1, 2);
    let small = BinomialFactor::new(-&pi.pow(6).unwrap(), 0, 1);
    let f = FactoredSeries::new(int(&k, 2), 1, vec![g.clone(), small]);
    let (reduced, cert) = reduce_mod_power(&f, 2);
    assert_eq!(cert.threshold, 4);
    assert_eq!(cert.dropped.len(), 1);
    assert_eq!(reduced.factors.len(), 1);
    assert_eq!(reduced.u_power, 1);
    let (same, cert0) = reduce_mod_power(&FactoredSeries::new(int(&k, 2), 0, vec![g]), 0);
    assert_eq!(same.factors.len(), 1);
    assert_eq!(cert0.threshold, 2);
}

/// `binom(1/p^ν, j)` as an exact rational.
fn binom_root(p: u64, nu: u32, j: u64) -> (BigInt, BigInt) {
    let d = BigInt::from(p).pow(nu);
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for i in 0..j {
        // (1/d − i) = (1 − i·d)/d
        num *= BigInt::from(1) - BigInt::from(i) * &d;
        den *= &d * BigInt::from(i + 1);
    }
    (num, den)
}

/// Dropped factors are p^ν-th powers: the binomial-series root raised back matches.
#[test]
fn dropped_factor_has_binomial_root() {
    let k = q5(30);
    let nu = 2;
    let x = &int(&k, 5).pow(5).unwrap() * &int(&k, 3);
    assert!(x.ord().unwrap() > power_threshold(&k, nu));
    let hi = 10;
    let mut coeffs = Vec::new();
    for j in 0..=hi {
        let (n, d) = binom_root(5, nu, j as u64);
        let b = PAdicElement::from_rational(&k, &n, &d).unwrap();
        coeffs.push(&b * &(-&x).pow(j).unwrap());
    }
    // ord(binom·x^j) ≥ j·(5 − 2 − 1/4) > 2j.
    let root = LaurentSeries::new(&k, 0, coeffs, INFINITE, 2 * (hi + 1));
    let back = root.pow(25).clip(0, hi);
    let original = LaurentSeries::binomial(&x, 1).clip(0, hi);
    let diff = back.sub(&original);
    for i in 0..=hi {
        assert!(diff.coeff(i).is_zero(), "u^{i}");
    }
    assert!(diff.coeff(1).abs_precision() >= 20);
}

fn unit_series(k: &FieldSpec, neg: &[i64], pos: &[i64]) -> LaurentSeries {
    let lo = -(neg.len() as i64);
    let mut cs: Vec<PAdicElement> = neg.iter().rev().map(|&c| int(k, 5 * c)).collect();
    cs.push(int(k, 1 + 5 * pos[0]));
    cs.extend(pos[1..].iter().map(|&c| int(k, c)));
    LaurentSeries::polynomial(k, lo, cs)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn inverse_round_trip(neg in prop::collection::vec(-20i64..20, 1..4), pos in prop::collection::vec(-20i64..20, 1..5)) {
        let k = q5(20);
        // Precision near u^0 grows with the window: each factor of the negative part costs
        // up to |lo_neg| exponents of window.
        let f = unit_series(&k, &neg, &pos).clip(-24, 24);
        let inv = f.invert_unit().unwrap();
        let prod = f.mul(&inv);
        let one = int(&k, 1);
        for i in -4..=4 {
            let target = if i == 0 { one.clone() } else { PAdicElement::zero(&k) };
            prop_assert!((&prod.coeff(i) - &target).is_zero(), "u^{}", i);
        }
        prop_assert!(prod.coeff(0).abs_precision() >= 4);
    }

    #[test]
    fn residue_is_additive(neg in prop::collection::vec(-20i64..20, 1..3), pos in prop::collection::vec(-20i64..20, 1..4),
                           neg2 in prop::collection::vec(-20i64..20, 1..3), pos2 in prop::collection::vec(-20i64..20, 1..4),
                           e1 in -5i64..5, e2 in -5i64..5) {
        let k = q5(20);
        let f = unit_series(&k, &neg, &pos).clip(-10, 10);
        let g = unit_series(&k, &neg2, &pos2).clip(-10, 10);
        let fg = f.mul(&g).clip(-10, 10);
        let n = 4;
        let a = residue_dlog(e1, &f, n).unwrap();
        let b = residue_dlog(e2, &g, n).unwrap();
        let c = residue_dlog(e1 + e2, &fg, n).unwrap();
        prop_assert_eq!((a + b) % n, c);
        prop_assert_eq!(a, e1.rem_euclid(4) as u64);
    }
}
