//! Rational combinations `Σ c_x [x]` modulo `[x] + [x⁻¹] = 0` and `[1] = 0`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::cyclotomic::{CyclotomicField, CyclotomicNumber};
use super::dilog::d2;
use super::BlochError;
use crate::k2::Scalar;

/// An element of the pre-Bloch group of `Q(ζ_n)`, tensored with `Q`.
///
/// Each class `{x, x⁻¹}` is stored under one representative: `ζᵏ` with
/// `1 ≤ k < n/2` for roots of unity, otherwise whichever of `x`, `x⁻¹` has
/// the lexicographically smaller coefficient vector. `[−1]` is `0`.
#[derive(Clone)]
pub struct PreBlochElement {
    field: Arc<CyclotomicField>,
    terms: BTreeMap<Vec<BigRational>, BigRational>,
}

impl PartialEq for PreBlochElement {
    fn eq(&self, other: &Self) -> bool {
        let n = self.field.conductor().lcm(&other.field.conductor());
        match (self.lift(n), other.lift(n)) {
            (Ok(a), Ok(b)) => a.terms == b.terms,
            _ => false,
        }
    }
}

impl Eq for PreBlochElement {}

/// Values of the Borel map at each embedding, one per conjugate pair.
#[derive(Clone, Debug)]
pub struct RegulatorVector {
    pub embeddings: Vec<u64>,
    pub values: Vec<f64>,
}

impl RegulatorVector {
    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

impl PreBlochElement {
    pub fn zero(field: &Arc<CyclotomicField>) -> Self {
        PreBlochElement { field: field.clone(), terms: BTreeMap::new() }
    }

    /// `[x]`; `[1]` is the zero element.
    pub fn generator(x: &CyclotomicNumber) -> Result<Self, BlochError> {
        let mut out = Self::zero(x.field());
        out.add_term(x, BigRational::from_integer(1.into()))?;
        Ok(out)
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(x, c_x)` in normal form.
    pub fn terms(&self) -> impl Iterator<Item = (CyclotomicNumber, &BigRational)> + '_ {
        self.terms.iter().map(|(k, c)| (self.number(k), c))
    }

    fn number(&self, key: &[BigRational]) -> CyclotomicNumber {
        let terms: Vec<_> = key.iter().enumerate().map(|(j, c)| (j as i64, c.clone())).collect();
        CyclotomicNumber::from_exponents(&self.field, &terms)
    }

    /// `(representative, ±1)` with `[x] = ±[representative]`, or `None` for `[±1]`.
    fn canonical(x: &CyclotomicNumber) -> Result<Option<(CyclotomicNumber, i64)>, BlochError> {
        if x.is_zero() {
            return Err(BlochError::Degenerate("[0]".into()));
        }
        let n = x.conductor();
        if let Some(k) = x.root_exponent() {
            return Ok(match k {
                0 => None,
                k if 2 * k == n => None,
                k if 2 * k < n => Some((x.clone(), 1)),
                k => Some((CyclotomicNumber::zeta_power(x.field(), (n - k) as i64), -1)),
            });
        }
        let inv = x.inverse().expect("nonzero");
        if x.coefficients() <= inv.coefficients() {
            Ok(Some((x.clone(), 1)))
        } else {
            Ok(Some((inv, -1)))
        }
    }

    fn add_term(&mut self, x: &CyclotomicNumber, c: BigRational) -> Result<(), BlochError> {
        if c.is_zero() {
            return Ok(());
        }
        let x = x.lift(self.field.conductor().lcm(&x.conductor()))?;
        if x.conductor() != self.field.conductor() {
            *self = self.lift(x.conductor())?;
        }
        if let Some((rep, sign)) = Self::canonical(&x)? {
            let key = rep.coefficients().to_vec();
            let entry = self.terms.entry(key.clone()).or_insert_with(BigRational::zero);
            *entry += c * BigRational::from_integer(sign.into());
            if entry.is_zero() {
                self.terms.remove(&key);
            }
        }
        Ok(())
    }

    /// The same element over `Q(ζ_m)`.
    pub fn lift(&self, m: u64) -> Result<Self, BlochError> {
        let field = CyclotomicField::get(m)?;
        if field.conductor() == self.field.conductor() {
            return Ok(self.clone());
        }
        let mut out = Self::zero(&field);
        for (x, c) in self.terms() {
            out.add_term(&x.lift(field.conductor())?, c.clone())?;
        }
        Ok(out)
    }

    /// `self + scalar·other`, over the compositum of the two fields.
    pub fn combine(&self, other: &Self, scalar: &BigRational) -> Result<Self, BlochError> {
        let mut out = self.clone();
        for (x, c) in other.terms() {
            out.add_term(&x, c * scalar)?;
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self, BlochError> {
        self.combine(other, &BigRational::from_integer(1.into()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, BlochError> {
        self.combine(other, &BigRational::from_integer((-1).into()))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.field);
        }
        PreBlochElement { field: self.field.clone(), terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect() }
    }

    /// Accumulates `c·[x]`.
    pub fn push(&mut self, x: &CyclotomicNumber, c: i64) -> Result<(), BlochError> {
        self.add_term(x, BigRational::from_integer(c.into()))
    }

    /// Applies `ζ ↦ ζˢ` to every argument.
    pub fn galois(&self, s: i64) -> Result<Self, BlochError> {
        let mut out = Self::zero(&self.field);
        for (x, c) in self.terms() {
            out.add_term(&x.galois(s)?, c.clone())?;
        }
        Ok(out)
    }

    /// `Σ c_x D₂(σ_k(x))` for any unit `k` modulo the conductor.
    pub fn borel_value(&self, k: u64) -> f64 {
        self.terms().map(|(x, c)| c.to_f64().unwrap_or(f64::NAN) * d2(x.embed(k))).sum()
    }

    pub fn regulator(&self) -> RegulatorVector {
        let embeddings = self.field.embeddings();
        let values = embeddings.iter().map(|&k| self.borel_value(k)).collect();
        RegulatorVector { embeddings, values }
    }
}

/// `[x] − [y] + [y/x] − [(1 − x⁻¹)/(1 − y⁻¹)] + [(1 − x)/(1 − y)]`.
pub fn five_term(x: &CyclotomicNumber, y: &CyclotomicNumber) -> Result<PreBlochElement, BlochError> {
    let one = x.one_like();
    if x.is_zero() || y.is_zero() || x.is_one() || y.is_one() || x == y {
        return Err(BlochError::Degenerate(format!("five-term arguments {x}, {y}")));
    }
    let xi = x.inverse().expect("nonzero");
    let yi = y.inverse().expect("nonzero");
    let a = one.minus(&xi).times(&one.minus(&yi).inverse().expect("y ≠ 1"));
    let b = one.minus(x).times(&one.minus(y).inverse().expect("y ≠ 1"));
    let mut out = PreBlochElement::zero(x.field());
    for (arg, c) in [(x.clone(), 1), (y.clone(), -1), (y.times(&xi), 1), (a, -1), (b, 1)] {
        if arg.is_zero() {
            return Err(BlochError::Degenerate(format!("five-term arguments {x}, {y}")));
        }
        out.push(&arg, c)?;
    }
    Ok(out)
}

/// `m·Σ_{i=1}^{m} [ζ_mⁱ x] − [xᵐ]`.
pub fn distribution_relation(x: &CyclotomicNumber, m: u64) -> Result<PreBlochElement, BlochError> {
    if m == 0 {
        return Err(BlochError::Degenerate("m = 0".into()));
    }
    let n = x.conductor().lcm(&CyclotomicField::get(m)?.conductor());
    let x = x.lift(n)?;
    let mut out = PreBlochElement::zero(x.field());
    for i in 1..=m {
        let arg = CyclotomicNumber::root_of_unity(m, i as i64)?.times(&x);
        if arg.is_zero() || arg.is_one() {
            return Err(BlochError::Degenerate(format!("ζ_{m}^{i}·x = {arg}")));
        }
        out.push(&arg, m as i64)?;
    }
    out.push(&x.power(m as i64).ok_or_else(|| BlochError::Degenerate("x = 0".into()))?, -1)?;
    Ok(out)
}

impl fmt::Debug for PreBlochElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PreBlochElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (x, c)) in self.terms().enumerate() {
            let sign = match (i, c.is_negative()) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            write!(f, "{sign}{}[{x}]", c.abs())?;
        }
        Ok(())
    }
}
