use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tate_regulator::k2::*;
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

/// `i = ω(2)` in `Q₅`.
fn fifth_root_i(k: &FieldSpec) -> PAdicElement {
    int(k, 2).teichmuller().unwrap()
}

#[test]
fn prop_sa_examples() {
    let k = q5(30);
    for (r, expected) in [(3, -1), (4, -2)] {
        let c = curve(&k, 5i64.pow(r as u32));
        let pi0 = int(&k, 5);
        let check = prop_sa_check(&c, &pi0, 1, 2, r, 2).unwrap();
        assert!(check.matches, "r = {r}: margin {}", check.margin);
        let xi = build_xi_l(&c, &pi0, 1, 2, r).unwrap();
        assert_eq!(o_k(&xi, 2).unwrap(), expected);
    }
}

#[test]
fn lemma_f0_example() {
    let k = q5(30);
    let c = curve(&k, 125);
    let i = fifth_root_i(&k);
    let check = lemma_f0_check(&c, &i, 4, &int(&k, -1), 2, 2).unwrap();
    assert!(check.matches, "margin {}", check.margin);
}

#[test]
fn lemma_f1_example() {
    let k = q5(30);
    let c = curve(&k, 25);
    let params = LemmaF1 { zeta: fifth_root_i(&k), m: 4, q0: int(&k, 5), a: 2, b: 1 };
    let report = lemma_f1_check(&c, &params, 2).unwrap();
    assert!(report.first.matches, "first margin {}", report.first.margin);
    assert!(report.second.matches, "second margin {}", report.second.margin);
    assert!(report.unit_product.matches, "unit margin {}", report.unit_product.margin);
}

#[test]
fn formula_table_entries() {
    let k = q5(30);
    let c = curve(&k, 125);
    let consts = [int(&k, 2), int(&k, 3), int(&k, 5), int(&k, 7).try_div(&int(&k, 25)).unwrap()];
    let table = formula_table(&c, &int(&k, 5), 3, &consts, 2).unwrap();
    assert_eq!(table.len(), 4 * 4 + 3 + 9);
    for e in &table {
        assert!(e.check.matches, "{}: margin {}", e.label, e.check.margin);
    }
}

#[test]
fn identities_detect_a_wrong_closed_form() {
    let k = q5(30);
    let c = curve(&k, 125);
    let pi0 = int(&k, 5);
    let good = prop_sa_check(&c, &pi0, 1, 2, 3, 2).unwrap();
    // 6 = ω(6)·(1 + 5·unit) is not a 25th power.
    let bad = compare_mod_powers(&good.lhs, &(&good.rhs * &int(&k, 6)), 2).unwrap();
    assert!(!bad.matches);
    // Roots of unity are absorbed.
    let twist = compare_mod_powers(&good.lhs, &(&good.rhs * &fifth_root_i(&k)), 2).unwrap();
    assert!(twist.matches);
    // Higher ν is a stronger statement and still holds.
    assert!(prop_sa_check(&c, &pi0, 1, 2, 3, 4).unwrap().matches);
}

#[test]
fn xi_l_is_in_the_kernel_of_tame_symbols() {
    let k = q5(30);
    let c = curve(&k, 125);
    let xi = build_xi_l(&c, &int(&k, 5), 1, 2, 3).unwrap();
    let m = xi.membership().unwrap();
    assert!(m.trivial);
    assert!(!m.values.is_empty());
    let f = &xi.terms[0].f;
    let orders: i64 = f.divisor().unwrap().iter().map(|(_, e)| e.abs()).sum();
    assert_eq!(orders, 6);
    assert!(f.is_periodic().unwrap());
}

#[test]
fn parameter_validation() {
    let k = q5(30);
    let c = curve(&k, 125);
    let pi0 = int(&k, 5);
    assert!(matches!(build_xi_l(&c, &pi0, 2, 1, 3), Err(K2Error::InvalidParameters(_))));
    assert!(matches!(build_xi_l(&c, &pi0, 1, 2, 4), Err(K2Error::InvalidParameters(_))));
    let i = fifth_root_i(&k);
    assert!(lemma_f0_symbol(&c, &int(&k, -1), 2, &int(&k, 1), 1).is_err());
    assert!(lemma_f0_symbol(&c, &i, 3, &int(&k, -1), 2).is_err());
    let f = ThetaProduct::new(&c, int(&k, 1), 0, vec![(int(&k, 2), 1), (int(&k, 1), -1)]);
    let g = ThetaProduct::constant_function(&c, int(&k, 3));
    assert!(matches!(MilnorSymbol::pair(f, g), Err(K2Error::NotPeriodic)));
    assert!(matches!(MilnorSymbol::from_terms(Vec::new()), Err(K2Error::EmptySymbol)));
}

#[test]
fn nontrivial_tame_symbol_is_rejected() {
    let k = q5(30);
    let c = curve(&k, 125);
    let sym = MilnorSymbol::pair(
        ThetaProduct::function_from_divisor(&c, int(&k, 1), &[(int(&k, 2), int(&k, 3)), (int(&k, 3), int(&k, 2))]).unwrap(),
        ThetaProduct::constant_function(&c, int(&k, 3)),
    )
    .unwrap();
    assert!(sym.membership().unwrap().trivial);
    // θ(2u)²/(θ(4u)θ(u)) has a double zero at 1/2, so {f, 3} has tame symbol 3^{±2} there.
    let varying = ThetaProduct::new(&c, int(&k, 1), 0, vec![(int(&k, 2), 2), (int(&k, 4), -1), (int(&k, 1), -1)]);
    assert!(varying.is_periodic().unwrap());
    let bad = MilnorSymbol::pair(varying, ThetaProduct::constant_function(&c, int(&k, 3))).unwrap();
    assert!(!bad.membership().unwrap().trivial);
    assert!(matches!(bad.tau_infty(2), Err(K2Error::MembershipFailed { .. })));
}

#[test]
fn constant_symbols() {
    let k = q5(30);
    let c = curve(&k, 125);
    let sym = MilnorSymbol::pair(
        ThetaProduct::constant_function(&c, int(&k, 2)),
        ThetaProduct::constant_function(&c, int(&k, 5)),
    )
    .unwrap();
    assert_eq!(o_k(&sym, 2).unwrap(), 0);
}

#[test]
fn tame_symbol_of_linear_pair() {
    let k = q5(30);
    let (a, b) = (int(&k, 3), int(&k, 11));
    let f = RationalFunction::linear(a.clone());
    let g = RationalFunction::linear(b.clone());
    let v = tame_symbol_p1(&f, &g, &Place::Finite(a.clone())).unwrap();
    assert!(v.approx_eq(&(&a - &b).inverse().unwrap()));
    assert!(weil_reciprocity_check(&f, &g).unwrap());
}

#[test]
fn steinberg_relation_is_trivial_everywhere() {
    let k = q5(30);
    let (a, b) = (int(&k, 3), int(&k, 7));
    // f = (u − a)/(u − b), 1 − f = (a − b)/(u − b).
    let f = RationalFunction::new(int(&k, 1), 0, vec![(a.clone(), 1), (b.clone(), -1)]);
    let g = RationalFunction::new(&a - &b, 0, vec![(b.clone(), -1)]);
    for place in joint_places(&f, &g) {
        assert!(tame_symbol_p1(&f, &g, &place).unwrap().approx_eq(&int(&k, 1)));
    }
}

fn random_function(k: &FieldSpec, rng: &mut ChaCha8Rng) -> RationalFunction<PAdicElement> {
    let mut roots = Vec::new();
    for _ in 0..rng.gen_range(1..5) {
        let num = rng.gen_range(1..2000i64);
        let shift = rng.gen_range(-2..3);
        let r = &int(k, num) * &int(k, 5).pow(shift).unwrap();
        roots.push((r, rng.gen_range(-3..4)));
    }
    let c = &int(k, rng.gen_range(1..500)) * &int(k, 5).pow(rng.gen_range(-2..3)).unwrap();
    RationalFunction::new(c, rng.gen_range(-3..4), roots)
}

#[test]
fn weil_reciprocity_random_pairs() {
    let k = q5(40);
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for _ in 0..100 {
        let f = random_function(&k, &mut rng);
        let g = random_function(&k, &mut rng);
        let prod = weil_product(&f, &g).unwrap();
        assert!(prod.approx_eq(&int(&k, 1)), "{f:?} {g:?}: {prod}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]
    #[test]
    fn tame_symbol_is_bimultiplicative(a in 1i64..500, b in 1i64..500, c in 1i64..500, x in 1i64..500) {
        let k = q5(30);
        let place = Place::Finite(int(&k, x));
        let f1 = RationalFunction::linear(int(&k, a));
        let f2 = RationalFunction::new(int(&k, 2), 1, vec![(int(&k, b), -2)]);
        let g = RationalFunction::linear(int(&k, c));
        let lhs = tame_symbol_p1(&f1.mul(&f2), &g, &place).unwrap();
        let rhs = &tame_symbol_p1(&f1, &g, &place).unwrap() * &tame_symbol_p1(&f2, &g, &place).unwrap();
        prop_assert!(lhs.approx_eq(&rhs));
        let anti = &tame_symbol_p1(&g, &f1, &place).unwrap() * &tame_symbol_p1(&f1, &g, &place).unwrap();
        prop_assert!(anti.approx_eq(&int(&k, 1)));
    }
}
