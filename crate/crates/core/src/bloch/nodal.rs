//! Symbols on the nodal curve `P¹/(0 ∼ ∞)`, the boundary map `δ̄` to the
//! pre-Bloch group, and the contour-integral regulator at a complex embedding.

use num_complex::Complex64;
use num_rational::BigRational;

use super::cyclotomic::CyclotomicNumber;
use super::prebloch::PreBlochElement;
use super::BlochError;
use crate::k2::{tame_symbol_p1, Place, RationalFunction, Scalar};

/// `c·∏(1 − t/r)^e` with `Σe = 0` and `∏r^e = 1`, so that `f(0) = f(∞) = c`.
#[derive(Clone, Debug)]
pub struct NodalFunction {
    pub constant: CyclotomicNumber,
    pub factors: Vec<(CyclotomicNumber, i64)>,
}

impl NodalFunction {
    pub fn new(constant: CyclotomicNumber, factors: Vec<(CyclotomicNumber, i64)>) -> Result<Self, BlochError> {
        if constant.is_zero() || factors.iter().any(|(r, _)| r.is_zero()) {
            return Err(BlochError::Degenerate("zero constant or root".into()));
        }
        let degree: i64 = factors.iter().map(|(_, e)| e).sum();
        let mut prod = constant.one_like();
        for (r, e) in &factors {
            prod = prod.times(&r.power(*e).expect("nonzero"));
        }
        if degree != 0 || !prod.is_one() {
            return Err(BlochError::NotNodal);
        }
        Ok(NodalFunction { constant, factors })
    }

    pub fn constant_function(c: CyclotomicNumber) -> Result<Self, BlochError> {
        Self::new(c, Vec::new())
    }

    /// `C·∏(t − r)^e` with `C = c·∏(−1/r)^e`.
    pub fn to_rational(&self) -> RationalFunction<CyclotomicNumber> {
        let mut c = self.constant.clone();
        for (r, e) in &self.factors {
            c = c.times(&r.negated().power(-e).expect("nonzero"));
        }
        RationalFunction::new(c, 0, self.factors.clone())
    }

    fn embedded(&self, k: u64) -> EmbeddedFunction {
        EmbeddedFunction {
            log_constant: self.constant.embed(k).norm().ln(),
            factors: self.factors.iter().map(|(r, e)| (r.embed(k), *e as f64)).collect(),
        }
    }
}

struct EmbeddedFunction {
    log_constant: f64,
    factors: Vec<(Complex64, f64)>,
}

impl EmbeddedFunction {
    fn log_abs(&self, t: Complex64) -> f64 {
        let one = Complex64::new(1.0, 0.0);
        self.log_constant + self.factors.iter().map(|(r, e)| e * (one - t / r).norm().ln()).sum::<f64>()
    }

    /// `f′/f`; for `|t| > 1` uses `Σ e·r/(t(t − r))`, valid since `Σe = 0`.
    fn log_derivative(&self, t: Complex64) -> Complex64 {
        if t.norm() <= 1.0 {
            self.factors.iter().map(|(r, e)| *e / (t - r)).sum()
        } else {
            self.factors.iter().map(|(r, e)| *e * r / (t * (t - r))).sum()
        }
    }
}

/// `Σ m·{f, g}`.
#[derive(Clone, Debug, Default)]
pub struct NodalSymbol {
    pub terms: Vec<(NodalFunction, NodalFunction, i64)>,
}

/// Tame symbols away from the node.
#[derive(Clone, Debug)]
pub struct NodalMembership {
    pub values: Vec<(CyclotomicNumber, CyclotomicNumber)>,
    /// Every value is a root of unity, hence trivial after tensoring with `Q`.
    pub trivial: bool,
}

impl NodalSymbol {
    pub fn pair(f: NodalFunction, g: NodalFunction) -> Self {
        NodalSymbol { terms: vec![(f, g, 1)] }
    }

    pub fn plus(&self, other: &NodalSymbol) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        NodalSymbol { terms }
    }

    fn support(&self) -> Vec<CyclotomicNumber> {
        let mut out: Vec<CyclotomicNumber> = Vec::new();
        for (f, g, _) in &self.terms {
            for (r, _) in f.factors.iter().chain(&g.factors) {
                if !out.iter().any(|x| x == r) {
                    out.push(r.clone());
                }
            }
        }
        out
    }

    pub fn membership(&self) -> Result<NodalMembership, BlochError> {
        let mut values = Vec::new();
        for x in self.support() {
            let mut acc = x.one_like();
            for (f, g, m) in &self.terms {
                let v = tame_symbol_p1(&f.to_rational(), &g.to_rational(), &Place::Finite(x.clone()))?;
                acc = acc.times(&v.power(*m).ok_or(BlochError::Degenerate("zero tame symbol".into()))?);
            }
            values.push((x, acc));
        }
        let trivial = values.iter().all(|(_, v)| v.root_exponent().is_some());
        Ok(NodalMembership { values, trivial })
    }

    /// Arguments of the roots of `f` and `g` at embedding `k`.
    fn root_angles(&self, k: u64) -> Vec<f64> {
        self.support().iter().map(|r| r.embed(k).arg()).collect()
    }

    /// Ray angles farthest from every root, best first.
    pub fn admissible_angles(&self, k: u64, count: usize) -> Vec<f64> {
        use std::f64::consts::{PI, TAU};
        let mut angles = self.root_angles(k);
        if angles.is_empty() {
            return (0..count).map(|i| 0.5 + i as f64 * TAU / count as f64).collect();
        }
        angles.sort_by(f64::total_cmp);
        let mut gaps: Vec<(f64, f64)> = Vec::new();
        for (i, a) in angles.iter().enumerate() {
            let next = if i + 1 < angles.len() { angles[i + 1] } else { angles[0] + TAU };
            let width = next - a;
            if width > 1e-12 {
                let mut mid = a + width / 2.0;
                if mid > PI {
                    mid -= TAU;
                }
                gaps.push((width, mid));
            }
        }
        gaps.sort_by(|x, y| y.0.total_cmp(&x.0));
        gaps.into_iter().take(count).map(|(_, m)| m).collect()
    }
}

/// `[a, b] = [a⁻¹b] − [a⁻¹] − [b]`.
pub fn bracket(a: &CyclotomicNumber, b: &CyclotomicNumber) -> Result<PreBlochElement, BlochError> {
    let ai = a.inverse().ok_or(BlochError::Degenerate("a = 0".into()))?;
    let mut out = PreBlochElement::zero(a.field());
    out.push(&ai.times(b), 1)?;
    out.push(&ai, -1)?;
    out.push(b, -1)?;
    Ok(out)
}

/// `Σ m Σ_{i,j} eᵢe′ⱼ [rᵢ, sⱼ]` over the factors `(1 − t/rᵢ)^{eᵢ}` of `f`
/// and `(1 − t/sⱼ)^{e′ⱼ}` of `g`. Membership is checked first.
pub fn delta_bar(sym: &NodalSymbol) -> Result<PreBlochElement, BlochError> {
    let first = sym.terms.first().ok_or(BlochError::Degenerate("empty symbol".into()))?;
    let m = sym.membership()?;
    if !m.trivial {
        let (x, v) = m.values.iter().find(|(_, v)| v.root_exponent().is_none()).expect("a nontrivial value");
        return Err(BlochError::MembershipFailed { point: x.to_string(), value: v.to_string() });
    }
    let mut out = PreBlochElement::zero(first.0.constant.field());
    for (f, g, mult) in &sym.terms {
        for (r, e) in &f.factors {
            for (s, e2) in &g.factors {
                let c = BigRational::from_integer((mult * e * e2).into());
                out = out.combine(&bracket(r, s)?, &c)?;
            }
        }
    }
    Ok(out)
}

/// `η₀ = {((1 − ζ₁⁻¹t)/(1 − t))^{m₁}·c₁, ((1 − ζ₂⁻¹t)/(1 − t))^{m₂}·c₂}` with
/// `c₁ = ((1 − ζ₁⁻¹ζ₂)/(1 − ζ₂))^{−m₁}` and `c₂ = ((1 − ζ₂⁻¹ζ₁)/(1 − ζ₁))^{−m₂}`.
pub fn eta0(zeta1: &CyclotomicNumber, m1: i64, zeta2: &CyclotomicNumber, m2: i64) -> Result<NodalSymbol, BlochError> {
    let one = zeta1.one_like();
    let is_root = |z: &CyclotomicNumber, m: i64| m >= 1 && z.power(m).is_some_and(|x| x.is_one());
    if !is_root(zeta1, m1) || !is_root(zeta2, m2) || zeta1 == zeta2 || zeta1.is_one() || zeta2.is_one() {
        return Err(BlochError::Degenerate("need distinct roots of unity ζᵢ^{mᵢ} = 1, ζᵢ ≠ 1".into()));
    }
    let side = |za: &CyclotomicNumber, zb: &CyclotomicNumber, m: i64| -> Result<NodalFunction, BlochError> {
        let zai = za.inverse().expect("root of unity");
        let base = one.minus(&zai.times(zb)).times(&one.minus(zb).inverse().expect("ζ ≠ 1"));
        let c = base.power(-m).ok_or(BlochError::Degenerate("ζ₁ = ζ₂".into()))?;
        NodalFunction::new(c, vec![(za.clone(), m), (one.clone(), -m)])
    };
    Ok(NodalSymbol::pair(side(zeta1, zeta2, m1)?, side(zeta2, zeta1, m2)?))
}

/// `m₁m₂([ζ₁ζ₂⁻¹] − [ζ₁] − [ζ₂⁻¹])`.
pub fn eta0_closed_form(zeta1: &CyclotomicNumber, m1: i64, zeta2: &CyclotomicNumber, m2: i64) -> Result<PreBlochElement, BlochError> {
    let z2i = zeta2.inverse().ok_or(BlochError::Degenerate("ζ₂ = 0".into()))?;
    let mut out = PreBlochElement::zero(zeta1.field());
    out.push(&zeta1.times(&z2i), m1 * m2)?;
    out.push(zeta1, -m1 * m2)?;
    out.push(&z2i, -m1 * m2)?;
    Ok(out)
}

/// Quadrature outcome along one ray.
#[derive(Clone, Copy, Debug)]
pub struct ContourValue {
    pub angle: f64,
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: u32,
}

/// Smallest angular distance from the ray at `angle` to a root, tested against the margin.
fn check_ray(sym: &NodalSymbol, k: u64, angle: f64, margin: f64) -> Result<(), BlochError> {
    use std::f64::consts::TAU;
    for a in sym.root_angles(k) {
        let d = (a - angle).rem_euclid(TAU);
        if d.min(TAU - d) < margin {
            return Err(BlochError::PathHitsDivisor { angle, margin });
        }
    }
    Ok(())
}

/// `Σ m ∫_γ log|f| d arg g − log|g| d arg f` along `γ(s) = e^{iθ}s/(1 − s)`, `s ∈ (0, 1)`.
pub fn contour_regulator(sym: &NodalSymbol, k: u64, angle: f64, margin: f64, tolerance: f64) -> Result<ContourValue, BlochError> {
    check_ray(sym, k, angle, margin)?;
    let dir = Complex64::from_polar(1.0, angle);
    let embedded: Vec<_> = sym.terms.iter().map(|(f, g, m)| (f.embedded(k), g.embedded(k), *m as f64)).collect();
    let integrand = |s: f64| -> f64 {
        let t = dir * (s / (1.0 - s));
        let dt = dir / ((1.0 - s) * (1.0 - s));
        embedded
            .iter()
            .map(|(f, g, m)| {
                let darg_g = (g.log_derivative(t) * dt).im;
                let darg_f = (f.log_derivative(t) * dt).im;
                m * (f.log_abs(t) * darg_g - g.log_abs(t) * darg_f)
            })
            .sum()
    };
    let out = quadrature::integrate(integrand, 0.0, 1.0, tolerance);
    if !out.integral.is_finite() || out.error_estimate > 1e3 * tolerance {
        return Err(BlochError::Quadrature { error: out.error_estimate });
    }
    Ok(ContourValue { angle, value: out.integral, error_estimate: out.error_estimate, evaluations: out.num_function_evaluations })
}
