//! Functions `c·uᵉ·∏θ(αᵢu)^{eᵢ}` with exact divisor data.

use crate::laurent::{reduce_mod_power, BinomialFactor, FactoredSeries, LaurentSeries, PowerCertificate};
use crate::padic::PAdicElement;

use super::{TateCurve, TateError};

/// `θ(shift·u)^exponent`.
#[derive(Clone, Debug)]
pub struct ThetaFactor {
    pub shift: PAdicElement,
    pub exponent: i64,
}

/// Order and leading coefficient of a function at a point `x ≠ 0`, with
/// respect to the local parameter `u − x`.
#[derive(Clone, Debug)]
pub struct LocalData {
    pub order: i64,
    pub leading: PAdicElement,
}

#[derive(Clone, Debug)]
pub struct ThetaProduct {
    curve: TateCurve,
    pub constant: PAdicElement,
    pub u_power: i64,
    pub factors: Vec<ThetaFactor>,
}

impl ThetaProduct {
    pub fn new(curve: &TateCurve, constant: PAdicElement, u_power: i64, factors: Vec<(PAdicElement, i64)>) -> Self {
        ThetaProduct {
            curve: curve.clone(),
            constant,
            u_power,
            factors: factors.into_iter().map(|(shift, exponent)| ThetaFactor { shift, exponent }).collect(),
        }
    }

    pub fn constant_function(curve: &TateCurve, c: PAdicElement) -> Self {
        Self::new(curve, c, 0, Vec::new())
    }

    /// `c·∏θ(αᵢu)/θ(βᵢu)`, which must satisfy `∏αᵢ/βᵢ = 1`.
    pub fn function_from_divisor(
        curve: &TateCurve,
        constant: PAdicElement,
        pairs: &[(PAdicElement, PAdicElement)],
    ) -> Result<Self, TateError> {
        let mut factors = Vec::new();
        for (a, b) in pairs {
            factors.push((a.clone(), 1));
            factors.push((b.clone(), -1));
        }
        let f = Self::new(curve, constant, 0, factors);
        if !f.is_periodic()? {
            return Err(TateError::NotPeriodic);
        }
        Ok(f)
    }

    pub fn curve(&self) -> &TateCurve {
        &self.curve
    }

    /// `f(qu) = f(u)`: `Σeᵢ = 0` and `∏αᵢ^{eᵢ} = q^{u_power}`.
    pub fn is_periodic(&self) -> Result<bool, TateError> {
        if self.factors.iter().map(|f| f.exponent).sum::<i64>() != 0 {
            return Ok(false);
        }
        let mut prod = PAdicElement::one(self.curve.field());
        for f in &self.factors {
            prod = &prod * &f.shift.pow(f.exponent)?;
        }
        Ok(prod.approx_eq(&self.curve.q().pow(self.u_power)?))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, TateError> {
        if !self.curve.same_curve(&other.curve) {
            return Err(TateError::CurveMismatch);
        }
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        Ok(ThetaProduct {
            curve: self.curve.clone(),
            constant: &self.constant * &other.constant,
            u_power: self.u_power + other.u_power,
            factors,
        })
    }

    pub fn pow(&self, k: i64) -> Result<Self, TateError> {
        Ok(ThetaProduct {
            curve: self.curve.clone(),
            constant: self.constant.pow(k)?,
            u_power: self.u_power * k,
            factors: self
                .factors
                .iter()
                .map(|f| ThetaFactor { shift: f.shift.clone(), exponent: f.exponent * k })
                .collect(),
        })
    }

    /// Multiplies the constant by `c`.
    pub fn scale(&self, c: &PAdicElement) -> Self {
        let mut out = self.clone();
        out.constant = &out.constant * c;
        out
    }

    /// The same function with every shift in `0 ≤ ord < ord(q)`, equal shifts
    /// merged and zero exponents removed, via `θ(qᵐw) = (−1)ᵐq^{−m(m−1)/2}w^{−m}θ(w)`.
    pub fn normalized(&self) -> Result<Self, TateError> {
        let q = self.curve.q();
        let mut constant = self.constant.clone();
        let mut u_power = self.u_power;
        let mut merged: Vec<ThetaFactor> = Vec::new();
        for f in &self.factors {
            if f.exponent == 0 {
                continue;
            }
            let (m, b0) = self.curve.reduce_to_annulus(&f.shift)?;
            if m != 0 {
                let mut c = &q.pow(-m * (m - 1) / 2)? * &b0.pow(-m)?;
                if m % 2 != 0 {
                    c = -c;
                }
                constant = &constant * &c.pow(f.exponent)?;
                u_power -= m * f.exponent;
            }
            match merged.iter_mut().find(|g| g.shift.approx_eq(&b0)) {
                Some(g) => g.exponent += f.exponent,
                None => merged.push(ThetaFactor { shift: b0, exponent: f.exponent }),
            }
        }
        merged.retain(|g| g.exponent != 0);
        Ok(ThetaProduct { curve: self.curve.clone(), constant, u_power, factors: merged })
    }

    /// Zero/pole classes on `E`, each represented in `0 ≤ ord < ord(q)`.
    pub fn divisor(&self) -> Result<Vec<(PAdicElement, i64)>, TateError> {
        let n = self.normalized()?;
        let mut out: Vec<(PAdicElement, i64)> = Vec::new();
        for f in &n.factors {
            let (_, rep) = self.curve.reduce_to_annulus(&f.shift.inverse()?)?;
            match out.iter_mut().find(|(x, _)| x.approx_eq(&rep)) {
                Some(entry) => entry.1 += f.exponent,
                None => out.push((rep, f.exponent)),
            }
        }
        out.retain(|(_, m)| *m != 0);
        Ok(out)
    }

    /// Order and leading coefficient in `u − x`.
    pub fn local_data(&self, x: &PAdicElement) -> Result<LocalData, TateError> {
        let curve = &self.curve;
        let q = curve.q();
        let one = PAdicElement::one(curve.field());
        let mut order = 0;
        let mut leading = &self.constant * &x.pow(self.u_power)?;
        for f in &self.factors {
            if f.exponent == 0 {
                continue;
            }
            let (k, w1) = curve.reduce_to_annulus(&(&f.shift * x))?;
            // θ(βu) = (−1)ᵏ q^{−k(k−1)/2} (βu/qᵏ)^{−k} θ(βu/qᵏ).
            let mut c = &q.pow(-k * (k - 1) / 2)? * &w1.pow(-k)?;
            if k % 2 != 0 {
                c = -c;
            }
            let value = if (&w1 - &one).is_zero() {
                order += f.exponent;
                let gamma = &f.shift * &q.pow(-k)?;
                &gamma * &curve.theta_derivative_at_one()
            } else {
                curve.theta_eval(&w1)?
            };
            leading = &leading * &(&c * &value).pow(f.exponent)?;
        }
        Ok(LocalData { order, leading })
    }

    /// Value at `x ≠ 0`; zero at zeros, an error at poles.
    pub fn eval(&self, x: &PAdicElement) -> Result<PAdicElement, TateError> {
        let d = self.local_data(x)?;
        match d.order {
            0 => Ok(d.leading),
            o if o > 0 => Ok(PAdicElement::zero(self.curve.field())),
            _ => Err(TateError::Pole),
        }
    }

    /// Replaces each theta factor by `θ_N(βu)` and drops every binomial factor
    /// that is a `p^ν`-th power in `K⟨u⟩`, leaving a finite product.
    pub fn truncated(&self, nu: u32) -> Result<(FactoredSeries, PowerCertificate), TateError> {
        let n = self.normalized()?;
        let curve = &self.curve;
        let threshold = crate::laurent::power_threshold(curve.field(), nu);
        let mut binomials = Vec::new();
        for f in &n.factors {
            let inv = f.shift.inverse()?;
            binomials.push(BinomialFactor::new(f.shift.clone(), 1, f.exponent));
            let mut qk = curve.q().clone();
            loop {
                let a = &qk * &f.shift;
                let b = &qk * &inv;
                let done = a.ord_bound() > threshold && b.ord_bound() > threshold;
                binomials.push(BinomialFactor::new(a, 1, f.exponent));
                binomials.push(BinomialFactor::new(b, -1, f.exponent));
                if done {
                    break;
                }
                qk = &qk * curve.q();
            }
        }
        let full = FactoredSeries::new(n.constant.clone(), n.u_power, binomials);
        Ok(reduce_mod_power(&full, nu))
    }

    /// `(e, unit)` with the function equal to `uᵉ·π^{ord c}·unit` on
    /// `[−window, window]`, for the residue map.
    pub fn series(&self, window: i64) -> Result<(i64, LaurentSeries), TateError> {
        let n = self.normalized()?;
        let curve = &self.curve;
        let mut acc = LaurentSeries::constant(&n.constant.unit_part()?).clip(-window, window);
        for f in &n.factors {
            let k_max = curve.k_max_for(f.shift.ord()?);
            let t = curve.theta_shifted_series(&f.shift, window, k_max)?;
            let base = if f.exponent > 0 { t } else { t.invert_unit()? };
            for _ in 0..f.exponent.unsigned_abs() {
                acc = acc.mul(&base).clip(-window, window);
            }
        }
        Ok((n.u_power, acc))
    }
}
