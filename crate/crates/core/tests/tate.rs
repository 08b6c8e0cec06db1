use proptest::prelude::*;
use tate_regulator::laurent::residue_dlog;
use tate_regulator::padic::*;
use tate_regulator::tate::*;

fn q5(n: u32) -> FieldSpec {
    FieldSpec::qp(5, n).unwrap()
}

fn int(f: &FieldSpec, n: i64) -> PAdicElement {
    PAdicElement::from_int(f, n)
}

fn curve(k: &FieldSpec, q: i64) -> TateCurve {
    TateCurve::new(&int(k, q)).unwrap()
}

/// Jacobi triple product: `θ(u)·∏(1−qᵐ) = Σ (−1)ⁿ q^{n(n−1)/2} uⁿ`.
fn jacobi_coefficient(c: &TateCurve, n: i64) -> PAdicElement {
    let k = c.field();
    let one = PAdicElement::one(k);
    let mut euler = one.clone();
    for m in 1..40 {
        euler = &euler * &(&one - &c.q().pow(m).unwrap());
    }
    let sign = if n.rem_euclid(2) == 0 { 1 } else { -1 };
    (&int(k, sign) * &c.q().pow(n * (n - 1) / 2).unwrap()).try_div(&euler).unwrap()
}

#[test]
fn theta_matches_triple_product() {
    let k = q5(40);
    let c = curve(&k, 125);
    let t = c.theta_series(12, c.k_max_for(0)).unwrap();
    for n in -12..=12 {
        let d = &t.coeff(n) - &jacobi_coefficient(&c, n);
        assert!(d.is_zero() && d.abs_precision() >= 40, "u^{n}: {d}");
    }
    let c0 = t.coeff(0);
    assert!((&c0 - &int(&k, 1)).ord().unwrap() >= 3);
    assert!(t.sum_coefficients().is_zero());
}

#[test]
fn truncation_is_checked() {
    let k = q5(40);
    let c = curve(&k, 125);
    assert!(matches!(c.theta_series(10, 3), Err(TateError::PrecisionMismatch(_))));
    assert!(c.theta_series(10, 13).is_ok());
}

#[test]
fn theta_functional_equation() {
    let k = q5(40);
    let c = curve(&k, 125);
    let theta = c.theta_series(21, c.k_max_for(0)).unwrap();
    let shifted = c.theta_shifted_series(c.q(), 21, c.k_max_for(3)).unwrap();
    let residual = shifted.add(&theta.shift(-1)).clip(-20, 20);
    assert!(residual.vanishes_on(-20, 20, 40));
    // θ(u⁻¹) = −u⁻¹θ(u): the coefficient of u^m on the left is c_{−m}.
    for m in -19..=19 {
        let d = &theta.coeff(-m) + &theta.coeff(m + 1);
        assert!(d.is_zero() && d.abs_precision() >= 40, "u^{m}");
    }
}

#[test]
fn theta_values() {
    let k = q5(30);
    let c = curve(&k, 125);
    assert!(c.theta_eval(&int(&k, 1)).unwrap().is_exact_zero());
    assert!(c.theta_eval(&int(&k, 125)).unwrap().is_exact_zero());
    assert!(c.theta_eval(&int(&k, 1).try_div(&int(&k, 125 * 125)).unwrap()).unwrap().is_exact_zero());
    let one = int(&k, 1);
    let mut oracle = int(&k, 2);
    for m in 1..20 {
        let f = &one + &c.q().pow(m).unwrap();
        oracle = &oracle * &(&f * &f);
    }
    assert!(c.theta_eval(&int(&k, -1)).unwrap().approx_eq(&oracle));
}

#[test]
fn curve_coefficient_leading_terms() {
    let k = q5(30);
    for qv in [5i64, 25, 125] {
        let c = curve(&k, qv);
        let (a4, a6) = c.curve_coefficients();
        let q = c.q();
        let q2 = q.pow(2).unwrap();
        assert!((&a4 + &(&int(&k, 5) * q)).ord_bound() >= q2.ord().unwrap());
        // With the 1/12 normalization the n = 1 term of a₆ is −q.
        assert!((&a6 + q).ord_bound() >= q2.ord().unwrap());
        assert_eq!(a4.ord().unwrap(), q.ord().unwrap() + 1);
    }
    let k7 = FieldSpec::qp(7, 20).unwrap();
    let c = TateCurve::new(&int(&k7, 49)).unwrap();
    let (a4, _) = c.curve_coefficients();
    assert_eq!(a4.ord().unwrap(), 2);
}

#[test]
fn weierstrass_identity_on_window() {
    let k = q5(40);
    let c = curve(&k, 125);
    let r = c.weierstrass_residual(20);
    assert!(r.vanishes_on(-20, 20, 40), "{r:?}");
}

#[test]
fn x_series_shape() {
    let k = q5(30);
    let c = curve(&k, 125);
    let (x, _) = c.xy_series(10);
    let x1 = x.coeff(1);
    assert!((&x1 - &int(&k, 1)).ord().unwrap() >= 3);
    // u ↦ q/u preserves the annulus |q| < |u| < 1 and fixes X.
    for m in -10..=10 {
        let reflected = &x.coeff(-m) * &c.q().pow(-m).unwrap();
        assert!((&x.coeff(m) - &reflected).is_zero(), "u^{m}");
    }
}

#[test]
fn points_and_group_law() {
    let k = q5(30);
    let c = curve(&k, 125);
    let w = c.weierstrass();
    assert!(c.point_eval(&int(&k, 1)).unwrap().is_infinity());
    assert!(c.point_eval(&int(&k, 125)).unwrap().is_infinity());
    let half = c.point_eval(&int(&k, -1)).unwrap();
    assert!(!half.is_infinity());
    assert!(w.add(&half, &half).unwrap().is_infinity());
    let i = int(&k, 2).teichmuller().unwrap();
    match c.point_eval(&i).unwrap() {
        CurvePoint::Affine { x, y } => {
            let r = w.residual(&x, &y);
            assert!(r.is_zero() && r.abs_precision() >= 28, "{r}");
        }
        CurvePoint::Infinity => panic!("ζ₄ is not a period"),
    }
    // x is even: the point of u⁻¹ is the negative of the point of u.
    let u = int(&k, 7);
    let p = c.point_eval(&u).unwrap();
    let m = c.point_eval(&u.inverse().unwrap()).unwrap();
    assert!(w.neg(&p).approx_eq(&m));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn parametrization_is_a_homomorphism(a in 2i64..400, b in 2i64..400, sa in 0i64..3, sb in 0i64..3) {
        let k = q5(30);
        let c = curve(&k, 125);
        let w = c.weierstrass();
        let u0 = &int(&k, 5).pow(sa).unwrap() * &int(&k, 5 * a + 2);
        let u1 = &int(&k, 5).pow(sb).unwrap() * &int(&k, 5 * b + 3);
        let p0 = c.point_eval(&u0).unwrap();
        let p1 = c.point_eval(&u1).unwrap();
        let sum = w.add(&p0, &p1).unwrap();
        let direct = c.point_eval(&(&u0 * &u1)).unwrap();
        prop_assert!(sum.approx_eq(&direct));
    }

    #[test]
    fn s_value_inversion(a in 1i64..500, s in -2i64..3) {
        let k = q5(30);
        let c = curve(&k, 125);
        prop_assume!(a % 5 != 0);
        let alpha = &int(&k, 5).pow(s).unwrap() * &int(&k, a);
        prop_assume!(!c.in_lattice(&alpha).unwrap());
        let prod = &c.s_value(&alpha, 2).unwrap() * &c.s_value(&alpha.inverse().unwrap(), 2).unwrap();
        prop_assert!(prod.approx_eq(&int(&k, 1)));
    }
}

#[test]
fn s_value_special_points() {
    let k = q5(30);
    let c = curve(&k, 125);
    assert!(c.s_value(&int(&k, 1), 2).unwrap().approx_eq(&int(&k, 1)));
    assert!(c.s_value(&int(&k, -1), 2).unwrap().approx_eq(&int(&k, 1)));
    assert_eq!(c.s_value(&int(&k, 125), 2).unwrap_err(), TateError::LatticePoint);
}

#[test]
fn divisor_functions() {
    let k = q5(30);
    let c = curve(&k, 125);
    let seven = int(&k, 7);
    let f = ThetaProduct::function_from_divisor(&c, seven.clone(), &[]).unwrap();
    assert!(f.eval(&int(&k, 3)).unwrap().approx_eq(&seven));
    let zeta = int(&k, 2).teichmuller().unwrap();
    let one = int(&k, 1);
    assert_eq!(
        ThetaProduct::function_from_divisor(&c, one.clone(), &[(zeta.clone(), one.clone())]).unwrap_err(),
        TateError::NotPeriodic
    );
    let zinv = zeta.inverse().unwrap();
    let pairs: Vec<_> = (0..4).map(|_| (zinv.clone(), one.clone())).collect();
    let g = ThetaProduct::function_from_divisor(&c, one.clone(), &pairs).unwrap();
    let div = g.divisor().unwrap();
    assert_eq!(div.len(), 2);
    assert!(div.iter().any(|(x, m)| x.approx_eq(&zeta) && *m == 4));
    assert!(div.iter().any(|(x, m)| x.approx_eq(&one) && *m == -4));
    // A q-periodic function takes equal values at u and qu.
    let u = int(&k, 3);
    let a = g.eval(&u).unwrap();
    let b = g.eval(&(&u * c.q())).unwrap();
    assert!(a.approx_eq(&b));
}

/// `f₁ = θ(q^{1/n}u)ⁿ/θ(u)^{n−1}θ(qu)` and `f₂ = (θ(ζₙu)/θ(u))ⁿ`.
fn lemma_functions(c: &TateCurve, root: &PAdicElement, zeta: &PAdicElement, n: i64) -> (ThetaProduct, ThetaProduct) {
    let k = c.field();
    let one = PAdicElement::one(k);
    let f1 = ThetaProduct::new(c, one.clone(), 0, vec![(root.clone(), n), (one.clone(), 1 - n), (c.q().clone(), -1)]);
    let f2 = ThetaProduct::new(c, one.clone(), 0, vec![(zeta.clone(), n), (one, -n)]);
    (f1, f2)
}

#[test]
fn residues_of_lemma_functions() {
    let k = q5(30);
    let c = curve(&k, 625);
    let zeta = int(&k, 2).teichmuller().unwrap();
    let (f1, f2) = lemma_functions(&c, &int(&k, 5), &zeta, 4);
    assert!(f1.is_periodic().unwrap() && f2.is_periodic().unwrap());
    let (e1, s1) = f1.series(16).unwrap();
    let (e2, s2) = f2.series(16).unwrap();
    assert_eq!(residue_dlog(e1, &s1, 4).unwrap(), 1);
    assert_eq!(residue_dlog(e2, &s2, 4).unwrap(), 0);
    let div = f1.divisor().unwrap();
    let root_inv = &int(&k, 5).inverse().unwrap() * c.q();
    assert!(div.iter().any(|(x, m)| x.approx_eq(&root_inv) && *m == 4));
}

#[test]
fn residues_over_a_ramified_field() {
    // K = Q₅(√5), q = 5 with ord_K(q) = 2, n = 2.
    let k = FieldSpec::new(5, &[-5, 0, 1], 30).unwrap();
    let c = TateCurve::new(&int(&k, 5)).unwrap();
    let pi = PAdicElement::uniformizer(&k);
    let (f1, f2) = lemma_functions(&c, &pi, &int(&k, -1), 2);
    let (e1, s1) = f1.series(16).unwrap();
    let (e2, s2) = f2.series(16).unwrap();
    assert_eq!(residue_dlog(e1, &s1, 2).unwrap(), 1);
    assert_eq!(residue_dlog(e2, &s2, 2).unwrap(), 0);
}

#[test]
fn truncation_threshold_for_theta() {
    let k = q5(30);
    let c = curve(&k, 125);
    let alpha = int(&k, 7);
    let f = ThetaProduct::new(&c, int(&k, 1), 0, vec![(alpha, 1)]);
    let (reduced, cert) = f.truncated(2).unwrap();
    assert_eq!(cert.threshold, 4);
    // (1 − 7u), (1 − 7q u), (1 − q/(7u)) survive: ord 0, 3, 3 ≤ 4 < 6.
    assert_eq!(reduced.factors.len(), 3);
    assert!(reduced.factors.iter().all(|b| b.coeff.ord().unwrap() <= 4));
    assert!(cert.dropped.iter().all(|b| b.coeff.ord().unwrap() > 4));
}
