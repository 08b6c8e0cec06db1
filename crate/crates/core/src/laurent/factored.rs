//! Products of binomials `c·u^e·∏(1 − x_j u^{d_j})^{m_j}` and their reduction
//! modulo `p^ν`-th powers.

use crate::padic::{FieldSpec, PAdicElement, INFINITE};

use super::{LaurentSeries, SeriesError};

/// `(1 − coeff·u^degree)^multiplicity`.
#[derive(Clone, Debug)]
pub struct BinomialFactor {
    pub coeff: PAdicElement,
    pub degree: i64,
    pub multiplicity: i64,
}

impl BinomialFactor {
    pub fn new(coeff: PAdicElement, degree: i64, multiplicity: i64) -> Self {
        BinomialFactor { coeff, degree, multiplicity }
    }

    /// Expansion on `[lo, hi]`.
    pub fn series(&self, lo: i64, hi: i64) -> Result<LaurentSeries, SeriesError> {
        let field = self.coeff.field();
        let base = if self.multiplicity >= 0 {
            LaurentSeries::binomial(&self.coeff, self.degree).clip(lo, hi)
        } else {
            geometric(&self.coeff, self.degree, lo, hi)?
        };
        let mut acc = LaurentSeries::one(field).clip(lo, hi);
        for _ in 0..self.multiplicity.unsigned_abs() {
            acc = acc.mul(&base).clip(lo, hi);
        }
        Ok(acc)
    }

    /// `1 − coeff·x^degree` raised to the multiplicity.
    pub fn eval(&self, x: &PAdicElement) -> Result<PAdicElement, SeriesError> {
        let one = PAdicElement::one(x.field());
        let v = &one - &(&self.coeff * &x.pow(self.degree)?);
        Ok(v.pow(self.multiplicity)?)
    }
}

/// `(1 − c·u^d)^{-1} = Σ_k c^k u^{dk}` on `[lo, hi]`.
fn geometric(c: &PAdicElement, d: i64, lo: i64, hi: i64) -> Result<LaurentSeries, SeriesError> {
    let field = c.field();
    let v = c.ord_bound();
    if d == 0 {
        let one = PAdicElement::one(field);
        let inv = (&one - c).inverse()?;
        return Ok(LaurentSeries::constant(&inv).clip(lo, hi));
    }
    if (d > 0 && v < 0) || (d < 0 && v < 1) {
        return Err(SeriesError::NotAUnit);
    }
    let mut coeffs = vec![PAdicElement::zero(field); (hi - lo + 1).max(1) as usize];
    let mut power = PAdicElement::one(field);
    let mut k = 0i64;
    loop {
        let exp = d * k;
        if exp < lo || exp > hi {
            break;
        }
        coeffs[(exp - lo) as usize] = power.clone();
        power = &power * c;
        k += 1;
    }
    let tail = if c.is_exact_zero() { INFINITE } else { v * k };
    let (below, above) = if d > 0 { (INFINITE, tail) } else { (tail, INFINITE) };
    Ok(LaurentSeries::new(field, lo, coeffs, below, above))
}

/// `constant · u^{u_power} · ∏ factors`.
#[derive(Clone, Debug)]
pub struct FactoredSeries {
    pub constant: PAdicElement,
    pub u_power: i64,
    pub factors: Vec<BinomialFactor>,
}

impl FactoredSeries {
    pub fn new(constant: PAdicElement, u_power: i64, factors: Vec<BinomialFactor>) -> Self {
        FactoredSeries { constant, u_power, factors }
    }

    pub fn field(&self) -> &FieldSpec {
        self.constant.field()
    }

    /// The series of `constant · ∏ factors` (the monomial is left out) on `[lo, hi]`.
    pub fn unit_series(&self, lo: i64, hi: i64) -> Result<LaurentSeries, SeriesError> {
        let mut acc = LaurentSeries::constant(&self.constant).clip(lo, hi);
        for f in &self.factors {
            acc = acc.mul(&f.series(lo, hi)?).clip(lo, hi);
        }
        Ok(acc)
    }

    pub fn eval(&self, x: &PAdicElement) -> Result<PAdicElement, SeriesError> {
        let mut v = &self.constant * &x.pow(self.u_power)?;
        for f in &self.factors {
            v = &v * &f.eval(x)?;
        }
        Ok(v)
    }

    /// Product of two factored series.
    pub fn mul(&self, other: &Self) -> Self {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        FactoredSeries {
            constant: &self.constant * &other.constant,
            u_power: self.u_power + other.u_power,
            factors,
        }
    }

    pub fn pow(&self, k: i64) -> Result<Self, SeriesError> {
        Ok(FactoredSeries {
            constant: self.constant.pow(k)?,
            u_power: self.u_power * k,
            factors: self
                .factors
                .iter()
                .map(|f| BinomialFactor::new(f.coeff.clone(), f.degree, f.multiplicity * k))
                .collect(),
        })
    }
}

/// Record of a reduction modulo `p^ν`-th powers.
#[derive(Clone, Debug)]
pub struct PowerCertificate {
    pub nu: u32,
    /// Factors `1 − x u^d` with `ord x` above this were dropped.
    pub threshold: i64,
    pub dropped: Vec<BinomialFactor>,
}

/// `ν·e + ⌈e/(p−1)⌉ + 1`: above it, `1 + x` is a `p^ν`-th power by the binomial series.
pub fn power_threshold(field: &FieldSpec, nu: u32) -> i64 {
    let e = field.e() as i64;
    let p = field.p() as i64;
    nu as i64 * e + (e + p - 2) / (p - 1) + 1
}

/// Drops every binomial factor whose coefficient lies beyond [`power_threshold`].
pub fn reduce_mod_power(f: &FactoredSeries, nu: u32) -> (FactoredSeries, PowerCertificate) {
    let threshold = power_threshold(f.field(), nu);
    let (dropped, kept): (Vec<_>, Vec<_>) = f
        .factors
        .iter()
        .cloned()
        .partition(|b| b.coeff.ord_bound() > threshold);
    (
        FactoredSeries { constant: f.constant.clone(), u_power: f.u_power, factors: kept },
        PowerCertificate { nu, threshold, dropped },
    )
}
