//! Symbols `Σ m·{f, g}` of theta products, their tame symbols on `E`, and the
//! projection `τ_∞` computed as a sum of tame symbols of truncated representatives.

use crate::laurent::{FactoredSeries, PowerCertificate};
use crate::padic::PAdicElement;
use crate::tate::{TateCurve, ThetaProduct};

use super::rational::{tame_symbol_p1, Place, RationalFunction};
use super::K2Error;

/// One term `multiplicity·{f, g}`.
#[derive(Clone, Debug)]
pub struct SymbolTerm {
    pub f: ThetaProduct,
    pub g: ThetaProduct,
    pub multiplicity: i64,
}

/// An element of `K₂` of the function field of a Tate curve.
#[derive(Clone, Debug)]
pub struct MilnorSymbol {
    curve: TateCurve,
    pub terms: Vec<SymbolTerm>,
}

/// The tame symbol at one point class.
#[derive(Clone, Debug)]
pub struct TameValue {
    pub point_class: PAdicElement,
    pub value: PAdicElement,
}

/// Tame symbols at every point class in the joint support.
#[derive(Clone, Debug)]
pub struct Membership {
    pub values: Vec<TameValue>,
    pub trivial: bool,
}

/// `τ_∞` of a symbol together with the truncation certificates behind it.
#[derive(Clone, Debug)]
pub struct TauValue {
    pub value: PAdicElement,
    pub nu: u32,
    pub certificates: Vec<PowerCertificate>,
    /// Number of points `α` (with `ord(α) > 0`, or `α = 0`) that were summed.
    pub points: usize,
}

impl MilnorSymbol {
    /// `{f, g}`; both entries must be `q`-periodic.
    pub fn pair(f: ThetaProduct, g: ThetaProduct) -> Result<Self, K2Error> {
        Self::from_terms(vec![SymbolTerm { f, g, multiplicity: 1 }])
    }

    pub fn from_terms(terms: Vec<SymbolTerm>) -> Result<Self, K2Error> {
        let curve = terms.first().ok_or(K2Error::EmptySymbol)?.f.curve().clone();
        for t in &terms {
            if !t.f.curve().same_curve(&curve) || !t.g.curve().same_curve(&curve) {
                return Err(K2Error::Tate(crate::tate::TateError::CurveMismatch));
            }
            if !t.f.is_periodic()? || !t.g.is_periodic()? {
                return Err(K2Error::NotPeriodic);
            }
        }
        Ok(MilnorSymbol { curve, terms })
    }

    pub fn curve(&self) -> &TateCurve {
        &self.curve
    }

    /// Concatenation of terms, i.e. the sum in `K₂`.
    pub fn plus(&self, other: &MilnorSymbol) -> Result<Self, K2Error> {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Self::from_terms(terms)
    }

    /// Tame symbol at the class of `α ∈ K*`.
    pub fn tame_symbol(&self, alpha: &PAdicElement) -> Result<PAdicElement, K2Error> {
        let mut acc = PAdicElement::one(self.curve.field());
        for t in &self.terms {
            let fd = t.f.local_data(alpha)?;
            let gd = t.g.local_data(alpha)?;
            let mut v = &fd.leading.pow(gd.order)? * &gd.leading.pow(-fd.order)?;
            if (fd.order * gd.order).rem_euclid(2) == 1 {
                v = -v;
            }
            acc = &acc * &v.pow(t.multiplicity)?;
        }
        Ok(acc)
    }

    /// Point classes in the support of some `f` or `g`.
    pub fn support(&self) -> Result<Vec<PAdicElement>, K2Error> {
        let mut out: Vec<PAdicElement> = Vec::new();
        for t in &self.terms {
            for (x, _) in t.f.divisor()?.into_iter().chain(t.g.divisor()?) {
                if !out.iter().any(|y| y.approx_eq(&x)) {
                    out.push(x);
                }
            }
        }
        Ok(out)
    }

    /// Evaluates every tame symbol the symbol could carry.
    pub fn membership(&self) -> Result<Membership, K2Error> {
        let one = PAdicElement::one(self.curve.field());
        let mut values = Vec::new();
        for x in self.support()? {
            let value = self.tame_symbol(&x)?;
            values.push(TameValue { point_class: x, value });
        }
        let trivial = values.iter().all(|t| t.value.approx_eq(&one));
        Ok(Membership { values, trivial })
    }

    /// `τ_∞` modulo `p^ν`-th powers. Membership is verified first.
    pub fn tau_infty(&self, nu: u32) -> Result<TauValue, K2Error> {
        let m = self.membership()?;
        if !m.trivial {
            let bad = m.values.iter().find(|t| !t.value.approx_eq(&PAdicElement::one(self.curve.field())));
            let bad = bad.expect("a nontrivial value exists");
            return Err(K2Error::MembershipFailed {
                point: bad.point_class.to_string(),
                value: bad.value.to_string(),
            });
        }
        let mut certificates = Vec::new();
        let mut rational = Vec::new();
        for t in &self.terms {
            let (fs, fc) = t.f.truncated(nu)?;
            let (gs, gc) = t.g.truncated(nu)?;
            certificates.push(fc);
            certificates.push(gc);
            rational.push((factored_to_rational(&fs)?, factored_to_rational(&gs)?, t.multiplicity));
        }
        let (value, points) = tau_hat_counted(&rational)?;
        Ok(TauValue { value, nu, certificates, points })
    }
}

/// `c·uᵉ·∏(1 − x u^d)^m` as `C·u^E·∏(u − r)^m`.
pub fn factored_to_rational(f: &FactoredSeries) -> Result<RationalFunction<PAdicElement>, K2Error> {
    let field = f.field();
    let one = PAdicElement::one(field);
    let mut constant = f.constant.clone();
    let mut u_power = f.u_power;
    let mut roots = Vec::new();
    for b in &f.factors {
        if b.coeff.is_exact_zero() {
            continue;
        }
        match b.degree {
            0 => constant = &constant * &(&one - &b.coeff).pow(b.multiplicity)?,
            // 1 − xu = −x(u − 1/x)
            1 => {
                constant = &constant * &(-&b.coeff).pow(b.multiplicity)?;
                roots.push((b.coeff.inverse()?, b.multiplicity));
            }
            // 1 − x/u = u⁻¹(u − x)
            -1 => {
                u_power -= b.multiplicity;
                roots.push((b.coeff.clone(), b.multiplicity));
            }
            d => return Err(K2Error::InvalidParameters(format!("binomial of degree {d}"))),
        }
    }
    Ok(RationalFunction::new(constant, u_power, roots))
}

fn tau_hat_counted(
    terms: &[(RationalFunction<PAdicElement>, RationalFunction<PAdicElement>, i64)],
) -> Result<(PAdicElement, usize), K2Error> {
    let field = terms.first().ok_or(K2Error::EmptySymbol)?.0.constant.field().clone();
    let mut acc = PAdicElement::one(&field);
    let mut count = 0;
    for (f, g, mult) in terms {
        let mut points: Vec<PAdicElement> = vec![PAdicElement::zero(&field)];
        for (r, _) in f.roots.iter().chain(g.roots.iter()) {
            if r.ord()? > 0 && !points.iter().any(|x| x.approx_eq(r)) {
                points.push(r.clone());
            }
        }
        count += points.len();
        for x in points {
            let v = tame_symbol_p1(f, g, &Place::Finite(x))?;
            acc = &acc * &v.pow(*mult)?;
        }
    }
    Ok((acc, count))
}

/// `Σ_α τ_α` over `α = 0` and all zeros and poles with `ord(α) > 0`.
pub fn tau_hat(
    terms: &[(RationalFunction<PAdicElement>, RationalFunction<PAdicElement>, i64)],
) -> Result<PAdicElement, K2Error> {
    Ok(tau_hat_counted(terms)?.0)
}
