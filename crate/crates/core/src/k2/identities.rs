//! Closed forms for `τ_∞` on specific theta-quotient symbols, checked against
//! the brute-force point sum.

use crate::laurent::FactoredSeries;
use crate::padic::{p_power_test, PAdicElement};
use crate::tate::{TateCurve, ThetaProduct};

use super::rational::RationalFunction;
use super::symbol::{factored_to_rational, tau_hat, MilnorSymbol};
use super::K2Error;

/// A brute-force value against a closed form, compared modulo `p^ν`-th powers.
#[derive(Clone, Debug)]
pub struct IdentityCheck {
    pub lhs: PAdicElement,
    pub rhs: PAdicElement,
    pub nu: u32,
    pub matches: bool,
    /// `ord(ω⁻¹·lhs/rhs − 1)` for the principal part of the ratio.
    pub margin: i64,
}

pub fn compare_mod_powers(lhs: &PAdicElement, rhs: &PAdicElement, nu: u32) -> Result<IdentityCheck, K2Error> {
    let test = p_power_test(&lhs.try_div(rhs)?, nu)?;
    Ok(IdentityCheck { lhs: lhs.clone(), rhs: rhs.clone(), nu, matches: test.is_power, margin: test.principal_ord })
}

fn sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn check_root(x: &PAdicElement, m: i64, what: &str) -> Result<(), K2Error> {
    if m < 1 || !x.pow(m)?.approx_eq(&PAdicElement::one(x.field())) {
        return Err(K2Error::InvalidParameters(format!("{what} is not an m-th root of unity for m = {m}")));
    }
    Ok(())
}

/// `f/f(x₀)`.
fn normalize_at(f: &ThetaProduct, x0: &PAdicElement) -> Result<ThetaProduct, K2Error> {
    let v = f.eval(x0)?;
    if v.is_zero() {
        return Err(K2Error::Degenerate);
    }
    Ok(f.scale(&v.inverse()?))
}

/// `(θ(ζ⁻¹u)/θ(u))^m`.
fn root_quotient(curve: &TateCurve, zeta: &PAdicElement, m: i64) -> Result<ThetaProduct, K2Error> {
    let one = PAdicElement::one(curve.field());
    Ok(ThetaProduct::new(curve, one.clone(), 0, vec![(zeta.inverse()?, m), (one, -m)]))
}

/// `ξ_L = {f/f(π₀^{−b}), g/g(π₀^{−a})}` with `f = (−u)^a(θ(π₀^a u)/θ(u))^r`
/// and `g = (−u)^b(θ(π₀^b u)/θ(u))^r`.
pub fn build_xi_l(curve: &TateCurve, pi0: &PAdicElement, a: i64, b: i64, r: i64) -> Result<MilnorSymbol, K2Error> {
    if !(0 < a && a < b && b < r) {
        return Err(K2Error::InvalidParameters(format!("need 0 < a < b < r, got ({a}, {b}, {r})")));
    }
    if !pi0.pow(r)?.approx_eq(curve.q()) {
        return Err(K2Error::InvalidParameters("π₀^r ≠ q".into()));
    }
    let field = curve.field();
    let one = PAdicElement::one(field);
    let build = |i: i64| {
        let c = PAdicElement::from_int(field, sign(i));
        ThetaProduct::new(curve, c, i, vec![(pi0.pow(i).expect("π₀ ≠ 0"), r), (one.clone(), -r)])
    };
    let f = normalize_at(&build(a), &pi0.pow(-b)?)?;
    let g = normalize_at(&build(b), &pi0.pow(-a)?)?;
    MilnorSymbol::pair(f, g)
}

/// Closed form for `τ_∞(ξ_L)`.
pub fn prop_sa_rhs(curve: &TateCurve, pi0: &PAdicElement, a: i64, b: i64, r: i64, nu: u32) -> Result<PAdicElement, K2Error> {
    let theta = |i: i64| curve.theta_eval(&pi0.pow(i).expect("π₀ ≠ 0"));
    let s = |i: i64| curve.s_value(&pi0.pow(i).expect("π₀ ≠ 0"), nu);
    let c = PAdicElement::from_int(curve.field(), sign(a * (r - b)));
    let mono = pi0.pow(a * (b - a) * (b - r))?;
    let th = theta(b)?.pow(b)?.try_div(&(&theta(b - a)?.pow(b - a)? * &theta(a)?.pow(a)?))?;
    let ss = s(b)?.try_div(&(&s(b - a)? * &s(a)?))?;
    Ok(&(&c * &mono) * &(&th.pow(r)? * &ss.pow(r * r)?))
}

pub fn prop_sa_check(
    curve: &TateCurve,
    pi0: &PAdicElement,
    a: i64,
    b: i64,
    r: i64,
    nu: u32,
) -> Result<IdentityCheck, K2Error> {
    let xi = build_xi_l(curve, pi0, a, b, r)?;
    let lhs = xi.tau_infty(nu)?.value;
    let rhs = prop_sa_rhs(curve, pi0, a, b, r, nu)?;
    compare_mod_powers(&lhs, &rhs, nu)
}

/// `ord_K(τ_∞)`, required to agree at `ν` and `ν + 1`.
pub fn o_k(sym: &MilnorSymbol, nu: u32) -> Result<i64, K2Error> {
    let v0 = sym.tau_infty(nu)?.value.ord()?;
    let v1 = sym.tau_infty(nu + 1)?.value.ord()?;
    if v0 != v1 {
        return Err(K2Error::UnstableOrder { low: v0, high: v1 });
    }
    Ok(v0)
}

/// The symbol `{f/f(ζ₂), g/g(ζ₁)}` with `f = (θ(ζ₁⁻¹u)/θ(u))^{m₁}`, `g = (θ(ζ₂⁻¹u)/θ(u))^{m₂}`.
pub fn lemma_f0_symbol(
    curve: &TateCurve,
    zeta1: &PAdicElement,
    m1: i64,
    zeta2: &PAdicElement,
    m2: i64,
) -> Result<MilnorSymbol, K2Error> {
    check_root(zeta1, m1, "ζ₁")?;
    check_root(zeta2, m2, "ζ₂")?;
    let one = PAdicElement::one(curve.field());
    if zeta1.approx_eq(zeta2) || zeta1.approx_eq(&one) || zeta2.approx_eq(&one) {
        return Err(K2Error::InvalidParameters("need ζ₁ ≠ ζ₂ and both ≠ 1".into()));
    }
    let f = normalize_at(&root_quotient(curve, zeta1, m1)?, zeta2)?;
    let g = normalize_at(&root_quotient(curve, zeta2, m2)?, zeta1)?;
    MilnorSymbol::pair(f, g)
}

pub fn lemma_f0_rhs(
    curve: &TateCurve,
    zeta1: &PAdicElement,
    m1: i64,
    zeta2: &PAdicElement,
    m2: i64,
    nu: u32,
) -> Result<PAdicElement, K2Error> {
    let z1i = zeta1.inverse()?;
    let num = curve.s_value(&(&z1i * zeta2), nu)?;
    let den = &curve.s_value(&z1i, nu)? * &curve.s_value(zeta2, nu)?;
    Ok(num.try_div(&den)?.pow(m1 * m2)?)
}

pub fn lemma_f0_check(
    curve: &TateCurve,
    zeta1: &PAdicElement,
    m1: i64,
    zeta2: &PAdicElement,
    m2: i64,
    nu: u32,
) -> Result<IdentityCheck, K2Error> {
    let lhs = lemma_f0_symbol(curve, zeta1, m1, zeta2, m2)?.tau_infty(nu)?.value;
    let rhs = lemma_f0_rhs(curve, zeta1, m1, zeta2, m2, nu)?;
    compare_mod_powers(&lhs, &rhs, nu)
}

/// Parameters `(ζ, m, q₀, a, b)` with `q₀^a = q`, `1 ≤ b < a`, `ζ^m = 1`, `ζ ≠ 1`.
#[derive(Clone, Debug)]
pub struct LemmaF1 {
    pub zeta: PAdicElement,
    pub m: i64,
    pub q0: PAdicElement,
    pub a: i64,
    pub b: i64,
}

/// Results of the Lemma f1 family of checks.
#[derive(Clone, Debug)]
pub struct LemmaF1Report {
    /// Brute force against the first closed form.
    pub first: IdentityCheck,
    /// First closed form against the expanded unit product.
    pub second: IdentityCheck,
    /// Brute force times `S(ζ)^{ma}` against the bare unit product.
    pub unit_product: IdentityCheck,
}

impl LemmaF1 {
    fn validate(&self, curve: &TateCurve) -> Result<(), K2Error> {
        if !(1 <= self.b && self.b < self.a) {
            return Err(K2Error::InvalidParameters(format!("need 1 ≤ b < a, got a = {}, b = {}", self.a, self.b)));
        }
        if !self.q0.pow(self.a)?.approx_eq(curve.q()) {
            return Err(K2Error::InvalidParameters("q₀^a ≠ q".into()));
        }
        check_root(&self.zeta, self.m, "ζ")?;
        if self.zeta.approx_eq(&PAdicElement::one(curve.field())) {
            return Err(K2Error::InvalidParameters("ζ = 1".into()));
        }
        Ok(())
    }

    /// `{f/f(ζ), g/g(q₀^b)}` with `f = θ(q₀^{−b}u)^a/(θ(u)^{a−1}θ(q^{−b}u))`, `g = (θ(ζ⁻¹u)/θ(u))^m`.
    pub fn symbol(&self, curve: &TateCurve) -> Result<MilnorSymbol, K2Error> {
        self.validate(curve)?;
        let one = PAdicElement::one(curve.field());
        let f = ThetaProduct::new(
            curve,
            one.clone(),
            0,
            vec![(self.q0.pow(-self.b)?, self.a), (one.clone(), 1 - self.a), (curve.q().pow(-self.b)?, -1)],
        );
        let f = normalize_at(&f, &self.zeta)?;
        let g = normalize_at(&root_quotient(curve, &self.zeta, self.m)?, &self.q0.pow(self.b)?)?;
        MilnorSymbol::pair(f, g)
    }

    /// `(S(q₀^{−b}ζ)/(S(ζ)S(q₀^{−b})))^{ma}·(θ(q₀^b)/θ(q₀^bζ⁻¹))^{mb}`.
    pub fn first_closed_form(&self, curve: &TateCurve, nu: u32) -> Result<PAdicElement, K2Error> {
        let qb = self.q0.pow(self.b)?;
        let qmb = qb.inverse()?;
        let zinv = self.zeta.inverse()?;
        let s = curve
            .s_value(&(&qmb * &self.zeta), nu)?
            .try_div(&(&curve.s_value(&self.zeta, nu)? * &curve.s_value(&qmb, nu)?))?;
        let t = curve.theta_eval(&qb)?.try_div(&curve.theta_eval(&(&qb * &zinv))?)?;
        Ok(&s.pow(self.m * self.a)? * &t.pow(self.m * self.b)?)
    }

    /// `((1−q₀ᵇ)/(1−ζ⁻¹q₀ᵇ))ᵇ ∏_k((1−q₀ᵇqᵏ)/(1−ζ⁻¹q₀ᵇqᵏ))^{ak+b}((1−ζq₀^{−b}qᵏ)/(1−q₀^{−b}qᵏ))^{ak−b}`,
    /// raised to `m`, with factors `1 − x`, `ord(x)` past the power threshold, omitted.
    pub fn unit_product(&self, curve: &TateCurve, nu: u32) -> Result<PAdicElement, K2Error> {
        let field = curve.field();
        let one = PAdicElement::one(field);
        let threshold = crate::laurent::power_threshold(field, nu);
        let qb = self.q0.pow(self.b)?;
        let qmb = qb.inverse()?;
        let zinv = self.zeta.inverse()?;
        let factor = |x: &PAdicElement, e: i64| -> Result<PAdicElement, K2Error> {
            if x.ord_bound() > threshold {
                Ok(one.clone())
            } else {
                Ok((&one - x).pow(e)?)
            }
        };
        let mut acc = factor(&qb, self.b)?.try_div(&factor(&(&zinv * &qb), self.b)?)?;
        let mut qk = curve.q().clone();
        for k in 1.. {
            let xs = [&qb * &qk, &(&zinv * &qb) * &qk, &(&self.zeta * &qmb) * &qk, &qmb * &qk];
            if xs.iter().all(|x| x.ord_bound() > threshold) {
                break;
            }
            let up = self.a * k + self.b;
            let down = self.a * k - self.b;
            acc = &acc * &factor(&xs[0], up)?.try_div(&factor(&xs[1], up)?)?;
            acc = &acc * &factor(&xs[2], down)?.try_div(&factor(&xs[3], down)?)?;
            qk = &qk * curve.q();
        }
        Ok(acc.pow(self.m)?)
    }

    pub fn second_closed_form(&self, curve: &TateCurve, nu: u32) -> Result<PAdicElement, K2Error> {
        let s = curve.s_value(&self.zeta, nu)?.pow(-self.a * self.m)?;
        Ok(&s * &self.unit_product(curve, nu)?)
    }

    pub fn check(&self, curve: &TateCurve, nu: u32) -> Result<LemmaF1Report, K2Error> {
        let lhs = self.symbol(curve)?.tau_infty(nu)?.value;
        let first = self.first_closed_form(curve, nu)?;
        let second = self.second_closed_form(curve, nu)?;
        let corrected = &lhs * &curve.s_value(&self.zeta, nu)?.pow(self.m * self.a)?;
        Ok(LemmaF1Report {
            first: compare_mod_powers(&lhs, &first, nu)?,
            second: compare_mod_powers(&first, &second, nu)?,
            unit_product: compare_mod_powers(&corrected, &self.unit_product(curve, nu)?, nu)?,
        })
    }
}

pub fn lemma_f1_check(curve: &TateCurve, params: &LemmaF1, nu: u32) -> Result<LemmaF1Report, K2Error> {
    params.check(curve, nu)
}

/// One row of the table of `τ̂` values on generators.
#[derive(Clone, Debug)]
pub struct FormulaEntry {
    pub label: String,
    pub check: IdentityCheck,
}

/// `θ_n(βu) = (1 − βu)∏_{k=1}^{n}(1 − qᵏβu)(1 − qᵏβ⁻¹u⁻¹)` as a rational function.
pub fn theta_polynomial(curve: &TateCurve, beta: &PAdicElement, n: u32) -> Result<RationalFunction<PAdicElement>, K2Error> {
    use crate::laurent::BinomialFactor;
    let one = PAdicElement::one(curve.field());
    let inv = beta.inverse()?;
    let mut factors = vec![BinomialFactor::new(beta.clone(), 1, 1)];
    let mut qk = curve.q().clone();
    for _ in 0..n {
        factors.push(BinomialFactor::new(&qk * beta, 1, 1));
        factors.push(BinomialFactor::new(&qk * &inv, -1, 1));
        qk = &qk * curve.q();
    }
    factored_to_rational(&FactoredSeries::new(one, 0, factors))
}

/// Brute-force `τ̂` on `{u, c}`, `{θ_N(π₀ⁱu), c}`, `{θ_N(π₀ⁱu), u}` and
/// `{θ_N(π₀ⁱu), θ_N(π₀ʲu)}` for `0 ≤ i, j < r`, against `c⁻¹`, `1`, `1`, `S(π₀^{i−j})`.
pub fn formula_table(
    curve: &TateCurve,
    pi0: &PAdicElement,
    r: i64,
    constants: &[PAdicElement],
    nu: u32,
) -> Result<Vec<FormulaEntry>, K2Error> {
    let field = curve.field();
    let one = PAdicElement::one(field);
    // N well past the point where the omitted factors become p^ν-th powers.
    let threshold = crate::laurent::power_threshold(field, nu);
    let n = ((threshold + pi0.ord()? * r) / curve.period() + 2) as u32;
    let u = RationalFunction::new(one.clone(), 1, Vec::new());
    let thetas: Vec<_> = (0..r).map(|i| theta_polynomial(curve, &pi0.pow(i)?, n)).collect::<Result<_, _>>()?;
    let mut out = Vec::new();
    let mut row = |label: String, f: &RationalFunction<PAdicElement>, g: &RationalFunction<PAdicElement>, rhs: PAdicElement| -> Result<(), K2Error> {
        let lhs = tau_hat(&[(f.clone(), g.clone(), 1)])?;
        out.push(FormulaEntry { label, check: compare_mod_powers(&lhs, &rhs, nu)? });
        Ok(())
    };
    for c in constants {
        let cf = RationalFunction::constant_function(c.clone());
        row(format!("{{u, {c}}}"), &u, &cf, c.inverse()?)?;
        for (i, t) in thetas.iter().enumerate() {
            row(format!("{{theta_N(pi0^{i} u), {c}}}"), t, &cf, one.clone())?;
        }
    }
    for (i, t) in thetas.iter().enumerate() {
        row(format!("{{theta_N(pi0^{i} u), u}}"), t, &u, one.clone())?;
    }
    for (i, ti) in thetas.iter().enumerate() {
        for (j, tj) in thetas.iter().enumerate() {
            let s = curve.s_value(&pi0.pow(i as i64 - j as i64)?, nu)?;
            row(format!("{{theta_N(pi0^{i} u), theta_N(pi0^{j} u)}}"), ti, tj, s)?;
        }
    }
    Ok(out)
}
