use num_complex::Complex64;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tate_regulator::bloch::*;
use tate_regulator::k2::Scalar;

/// Catalan's constant from `Σ(−1)ᵏ/(2k+1)²` with Euler-transform acceleration by averaging partial sums.
fn catalan_oracle() -> f64 {
    // Repeated averaging of consecutive partial sums of an alternating series.
    let mut partial = Vec::with_capacity(60);
    let mut s = 0.0f64;
    for k in 0..60 {
        let term = 1.0 / ((2 * k + 1) as f64).powi(2);
        s += if k % 2 == 0 { term } else { -term };
        partial.push(s);
    }
    while partial.len() > 1 {
        partial = partial.windows(2).map(|w| (w[0] + w[1]) / 2.0).collect();
    }
    partial[0]
}

fn zeta(m: u64, k: i64) -> CyclotomicNumber {
    CyclotomicNumber::root_of_unity(m, k).unwrap()
}

#[test]
fn d2_at_i_is_catalan() {
    let g = catalan_oracle();
    assert!((g - 0.915965594177219).abs() < 1e-13, "{g}");
    let v = d2(Complex64::new(0.0, 1.0));
    assert!((v - g).abs() < 1e-11, "{v}");
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// `a + b·ζ_n^j` with small random integers.
fn random_number(rng: &mut ChaCha8Rng, n: u64) -> CyclotomicNumber {
    let f = CyclotomicField::get(n).unwrap();
    let step = (f.conductor() / n) as i64;
    let terms: Vec<_> = (0..rng.gen_range(1..4))
        .map(|_| (rng.gen_range(0..n as i64) * step, q(rng.gen_range(-3..4))))
        .collect();
    CyclotomicNumber::from_exponents(&f, &terms)
}

fn far_from_0_and_1(x: &CyclotomicNumber) -> bool {
    let one = Complex64::new(1.0, 0.0);
    x.field().embeddings().iter().all(|&k| {
        let z = x.embed(k);
        z.norm() >= 1e-3 && (z - one).norm() >= 1e-3
    })
}

#[test]
fn cyclotomic_arithmetic() {
    let i = zeta(4, 1);
    assert!(i.times(&i).plus(&i.one_like()).is_zero());
    let w = zeta(3, 1);
    // 1 + ω + ω² = 0 after pushing into Q(ζ₁₂) together with i.
    let s = w.one_like().plus(&w).plus(&w.times(&w));
    assert!(s.is_zero());
    let prod = i.times(&w);
    assert_eq!(prod.conductor(), 12);
    assert_eq!(prod.root_exponent(), Some(7));
    let x = random_number(&mut ChaCha8Rng::seed_from_u64(3), 15);
    if !x.is_zero() {
        assert!(x.times(&x.inverse().unwrap()).is_one());
    }
    assert_eq!(zeta(7, 7).root_exponent(), Some(0));
    assert!(CyclotomicField::get(121).is_err());
}

#[test]
fn normal_form() {
    let i = zeta(4, 1);
    let x = i.plus(&i.one_like()).plus(&i.one_like());
    let a = PreBlochElement::generator(&x).unwrap();
    let b = PreBlochElement::generator(&x.inverse().unwrap()).unwrap();
    assert!(a.add(&b).unwrap().is_zero());
    assert_eq!(a, b.scale(&q(-1)));
    assert!(PreBlochElement::generator(&zeta(4, 2)).unwrap().is_zero());
    assert!(PreBlochElement::generator(&i.one_like()).unwrap().is_zero());
    let c = PreBlochElement::generator(&zeta(4, 3)).unwrap();
    assert_eq!(c.terms().next().unwrap().0, i);
    assert_eq!(a.add(&PreBlochElement::zero(i.field())).unwrap(), a);
    // Pushing Q(ζ₄) and Q(ζ₃) elements together lands in Q(ζ₁₂).
    let mixed = PreBlochElement::generator(&i).unwrap().add(&PreBlochElement::generator(&zeta(3, 1)).unwrap()).unwrap();
    assert_eq!(mixed.field().conductor(), 12);
    let expected = 2.0 * d2(Complex64::new(0.0, 1.0)) * 0.5 + d2(Complex64::from_polar(1.0, std::f64::consts::TAU / 3.0));
    assert!((mixed.borel_value(1) - expected).abs() < 1e-12);
    // Idempotence: rebuilding from the normal form changes nothing.
    let again = PreBlochElement::zero(mixed.field()).add(&mixed).unwrap();
    assert_eq!(again, mixed);
}

#[test]
fn borel_value_of_i() {
    let e = PreBlochElement::generator(&zeta(4, 1)).unwrap();
    let r = e.regulator();
    assert_eq!(r.embeddings, vec![1]);
    assert!((r.values[0] - catalan_oracle()).abs() < 1e-11);
}

#[test]
fn five_term_relation_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut tested = 0;
    while tested < 50 {
        let n = rng.gen_range(3..=24);
        let x = random_number(&mut rng, n);
        let y = random_number(&mut rng, n);
        if x.is_zero() || y.is_zero() || x.is_one() || y.is_one() || x == y || !far_from_0_and_1(&x) || !far_from_0_and_1(&y) {
            continue;
        }
        let e = five_term(&x, &y).unwrap();
        let r = e.regulator();
        assert!(r.max_abs() < 1e-10, "x = {x}, y = {y}: {:?}", r.values);
        tested += 1;
    }
}

#[test]
fn five_term_on_real_arguments() {
    let f = CyclotomicField::get(1).unwrap();
    let third = CyclotomicNumber::from_rational(&f, BigRational::new(1.into(), 3.into()));
    let fifth = CyclotomicNumber::from_rational(&f, BigRational::new(1.into(), 5.into()));
    let e = five_term(&third, &fifth).unwrap();
    for (x, _) in e.terms() {
        assert!(d2(x.embed(1)).abs() < 1e-15);
    }
    assert!(five_term(&third, &third).is_err());
}

#[test]
fn distribution_relations() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for m in 1..=4u64 {
        for _ in 0..5 {
            let x = random_number(&mut rng, 5);
            let Ok(e) = distribution_relation(&x, m) else { continue };
            let r = e.regulator();
            assert!(r.max_abs() < 1e-10, "m = {m}, x = {x}: {:?}", r.values);
            if m == 1 {
                assert!(e.is_zero());
            }
        }
    }
    let e = distribution_relation(&zeta(7, 1), 3).unwrap();
    assert_eq!(e.field().conductor(), 42);
    assert!(e.regulator().max_abs() < 1e-10);
    let e = distribution_relation(&zeta(4, 1), 2).unwrap();
    assert!(e.regulator().max_abs() < 1e-10);
    assert!(distribution_relation(&zeta(4, 1), 4).is_err());
}

#[test]
fn corollary_symbol_end_to_end() {
    let (i, minus_one) = (zeta(4, 1), zeta(4, 2));
    let sym = eta0(&i, 4, &minus_one, 2).unwrap();
    assert!(sym.membership().unwrap().trivial);
    let db = delta_bar(&sym).unwrap();
    let closed = eta0_closed_form(&i, 4, &minus_one, 2).unwrap();
    assert!(db == closed || db == closed.scale(&q(-1)));
    let target = 16.0 * catalan_oracle();
    let angles = sym.admissible_angles(1, 2);
    let values: Vec<f64> = angles.iter().map(|&a| contour_regulator(&sym, 1, a, 1e-3, 1e-12).unwrap().value).collect();
    assert!((values[0].abs() - target).abs() < 1e-6, "{values:?}");
    assert!((values[0] - values[1]).abs() < 2e-9);
    // The integral equals −D₂(δ̄) with δ̄ taken with the "+" sign.
    assert!((values[0] + db.borel_value(1)).abs() < 1e-7);
    assert!(matches!(contour_regulator(&sym, 1, 0.0, 1e-3, 1e-12), Err(BlochError::PathHitsDivisor { .. })));
}

#[test]
fn delta_bar_properties() {
    let (i, minus_one) = (zeta(4, 1), zeta(4, 2));
    let one = i.one_like();
    let sym = eta0(&i, 4, &minus_one, 2).unwrap();
    let twice = delta_bar(&sym.plus(&sym)).unwrap();
    assert_eq!(twice, delta_bar(&sym).unwrap().scale(&q(2)));
    let f = sym.terms[0].0.clone();
    let constant = NodalFunction::constant_function(one.plus(&one)).unwrap();
    let trivial = NodalSymbol::pair(f.clone(), constant.clone());
    assert!(delta_bar(&trivial).is_err() || delta_bar(&trivial).unwrap().is_zero());
    let cc = NodalSymbol::pair(constant.clone(), constant);
    assert!(delta_bar(&cc).unwrap().is_zero());
    assert!(matches!(NodalFunction::new(one.clone(), vec![(i.clone(), 1)]), Err(BlochError::NotNodal)));
    // Contour value of a constant first entry against itself vanishes.
    let v = contour_regulator(&cc, 1, 0.5, 1e-3, 1e-12).unwrap();
    assert!(v.value.abs() < 1e-12);
}

#[test]
fn membership_failure_is_reported() {
    let i = zeta(4, 1);
    let one = i.one_like();
    let three = one.plus(&one).plus(&one);
    // {(1 − t/i)/(1 − t)·c, 3}: the tame symbol at t = i is 3^{±1}.
    let f = NodalFunction::new(one.clone(), vec![(i.clone(), 1), (one.clone(), -1)]).unwrap_err();
    assert!(matches!(f, BlochError::NotNodal));
    let f = NodalFunction::new(one.clone(), vec![(i.clone(), 1), (i.negated(), 1), (one.clone(), -2)]).unwrap();
    let g = NodalFunction::constant_function(three).unwrap();
    let sym = NodalSymbol::pair(f, g);
    assert!(!sym.membership().unwrap().trivial);
    assert!(matches!(delta_bar(&sym), Err(BlochError::MembershipFailed { .. })));
}

#[test]
fn galois_identities() {
    for (l, m) in [(3, 4), (7, 4), (3, 8)] {
        let r = galois_beta_check(l, m).unwrap();
        assert!(r.passed(1e-10), "({l}, {m})");
        assert_eq!(r.tau_action(), Some(1));
        assert!(r.sigma.iter().all(|s| s.exact && s.residual < 1e-10));
    }
    assert!(galois_beta_check(5, 4).is_err());
    assert!(galois_beta_check(3, 6).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn d2_functional_equations(re in -3.0f64..3.0, im in -3.0f64..3.0) {
        let z = Complex64::new(re, im);
        let one = Complex64::new(1.0, 0.0);
        prop_assume!(z.norm() > 1e-3 && (z - one).norm() > 1e-3);
        prop_assert!((d2(z) + d2(z.conj())).abs() < 1e-12);
        prop_assert!((d2(z) + d2(one / z)).abs() < 1e-11);
        prop_assert!((d2(z) + d2(one - z)).abs() < 1e-11);
        prop_assert!(d2(Complex64::new(re, 0.0)).abs() < 1e-14);
    }
}
