//! Windowed Laurent series with certified tails.

use std::fmt;

use crate::padic::{FieldSpec, PAdicElement, INFINITE};

use super::SeriesError;

/// A truncated element of `R⟨u⟩`: exact-precision coefficients on a window
/// `[lo, hi]`, plus lower bounds for the valuations of every coefficient
/// below `lo` and above `hi`. A tail bound of [`INFINITE`] means the tail is
/// identically zero.
#[derive(Clone)]
pub struct LaurentSeries {
    field: FieldSpec,
    lo: i64,
    coeffs: Vec<PAdicElement>,
    below: i64,
    above: i64,
}

fn min_bound(a: i64, b: i64) -> i64 {
    a.min(b).min(INFINITE)
}

fn add_bound(a: i64, b: i64) -> i64 {
    if a >= INFINITE || b >= INFINITE {
        INFINITE
    } else {
        a + b
    }
}

impl LaurentSeries {
    pub fn new(field: &FieldSpec, lo: i64, coeffs: Vec<PAdicElement>, below: i64, above: i64) -> Self {
        let mut s = LaurentSeries {
            field: field.clone(),
            lo,
            coeffs,
            below: below.min(INFINITE),
            above: above.min(INFINITE),
        };
        if s.coeffs.is_empty() {
            s.coeffs.push(PAdicElement::approx_zero(field, min_bound(below, above)));
        }
        s
    }

    /// A Laurent polynomial with no tails.
    pub fn polynomial(field: &FieldSpec, lo: i64, coeffs: Vec<PAdicElement>) -> Self {
        Self::new(field, lo, coeffs, INFINITE, INFINITE)
    }

    pub fn zero(field: &FieldSpec) -> Self {
        Self::polynomial(field, 0, vec![PAdicElement::zero(field)])
    }

    pub fn constant(c: &PAdicElement) -> Self {
        Self::polynomial(c.field(), 0, vec![c.clone()])
    }

    pub fn one(field: &FieldSpec) -> Self {
        Self::constant(&PAdicElement::one(field))
    }

    /// `c·u^k`.
    pub fn monomial(c: &PAdicElement, k: i64) -> Self {
        Self::polynomial(c.field(), k, vec![c.clone()])
    }

    /// `1 − c·u^d`.
    pub fn binomial(c: &PAdicElement, d: i64) -> Self {
        let field = c.field();
        let one = Self::one(field);
        one.sub(&Self::monomial(c, d))
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }
    pub fn lo(&self) -> i64 {
        self.lo
    }
    pub fn hi(&self) -> i64 {
        self.lo + self.coeffs.len() as i64 - 1
    }
    /// Valuation bound for every coefficient below the window.
    pub fn below_tail(&self) -> i64 {
        self.below
    }
    /// Valuation bound for every coefficient above the window.
    pub fn above_tail(&self) -> i64 {
        self.above
    }

    pub fn coeffs(&self) -> &[PAdicElement] {
        &self.coeffs
    }

    /// Coefficient of `u^k`; outside the window an inexact zero carrying the tail bound.
    pub fn coeff(&self, k: i64) -> PAdicElement {
        if k < self.lo {
            self.tail_element(self.below)
        } else if k > self.hi() {
            self.tail_element(self.above)
        } else {
            self.coeffs[(k - self.lo) as usize].clone()
        }
    }

    fn tail_element(&self, bound: i64) -> PAdicElement {
        if bound >= INFINITE {
            PAdicElement::zero(&self.field)
        } else {
            PAdicElement::approx_zero(&self.field, bound)
        }
    }

    /// Minimum valuation bound over the window and both tails.
    pub fn min_ord(&self) -> i64 {
        self.coeffs
            .iter()
            .map(|c| c.ord_bound())
            .fold(min_bound(self.below, self.above), i64::min)
    }

    /// Smallest absolute precision among window coefficients in `[a, b]`.
    pub fn precision_on(&self, a: i64, b: i64) -> i64 {
        (a..=b).map(|k| self.coeff(k).abs_precision()).min().unwrap_or(INFINITE)
    }

    /// Every coefficient on `[a, b]` vanishes to its precision, and that precision is at least `abs`.
    pub fn vanishes_on(&self, a: i64, b: i64, abs: i64) -> bool {
        (a..=b).all(|k| {
            let c = self.coeff(k);
            c.is_zero() && c.abs_precision() >= abs
        })
    }

    /// Restricts to `[a, b]`, folding dropped coefficients into the tails.
    pub fn clip(&self, a: i64, b: i64) -> Self {
        let mut below = self.below;
        let mut above = self.above;
        for k in self.lo..a.min(self.hi() + 1) {
            below = min_bound(below, self.coeff(k).ord_bound());
        }
        for k in (b + 1).max(self.lo)..=self.hi() {
            above = min_bound(above, self.coeff(k).ord_bound());
        }
        if a > self.hi() {
            below = min_bound(below, self.above);
        }
        if b < self.lo {
            above = min_bound(above, self.below);
        }
        let coeffs = (a..=b).map(|k| self.coeff(k)).collect();
        Self::new(&self.field, a, coeffs, below, above)
    }

    /// Applies `op` coefficientwise on the union window.
    fn zip_with(&self, other: &Self, op: impl Fn(&PAdicElement, &PAdicElement) -> PAdicElement) -> Self {
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        let coeffs = (lo..=hi).map(|k| op(&self.coeff(k), &other.coeff(k))).collect();
        Self::new(
            &self.field,
            lo,
            coeffs,
            min_bound(self.below, other.below),
            min_bound(self.above, other.above),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn neg(&self) -> Self {
        Self::new(&self.field, self.lo, self.coeffs.iter().map(|c| -c).collect(), self.below, self.above)
    }

    pub fn scale(&self, c: &PAdicElement) -> Self {
        let v = c.ord_bound();
        Self::new(
            &self.field,
            self.lo,
            self.coeffs.iter().map(|x| x * c).collect(),
            add_bound(self.below, v),
            add_bound(self.above, v),
        )
    }

    /// Multiplication by `u^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self::new(&self.field, self.lo + k, self.coeffs.clone(), self.below, self.above)
    }

    /// `d/du`.
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * &PAdicElement::from_int(&self.field, self.lo + i as i64))
            .collect();
        Self::new(&self.field, self.lo - 1, coeffs, self.below, self.above)
    }

    /// `f(λu)`; needs `ord λ ≤ 0` for a certified lower tail and `ord λ ≥ 0` for the upper one.
    pub fn substitute(&self, lambda: &PAdicElement) -> Result<Self, SeriesError> {
        let v = lambda.ord()?;
        if (v > 0 && self.below < INFINITE) || (v < 0 && self.above < INFINITE) {
            return Err(SeriesError::UncertifiableTail);
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        let mut power = lambda.pow(self.lo)?;
        for c in &self.coeffs {
            coeffs.push(c * &power);
            power = &power * lambda;
        }
        let below = add_bound(self.below, (self.lo - 1) * v);
        let above = add_bound(self.above, (self.hi() + 1) * v);
        Ok(Self::new(&self.field, self.lo, coeffs, below, above))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (f, g) = (self, other);
        let pre = |s: &Self| -> Vec<i64> {
            let mut acc = s.below;
            s.coeffs
                .iter()
                .map(|c| {
                    acc = min_bound(acc, c.ord_bound());
                    acc
                })
                .collect()
        };
        let suf = |s: &Self| -> Vec<i64> {
            let mut acc = s.above;
            let mut v: Vec<i64> = s
                .coeffs
                .iter()
                .rev()
                .map(|c| {
                    acc = min_bound(acc, c.ord_bound());
                    acc
                })
                .collect();
            v.reverse();
            v
        };
        let (pre_f, suf_f, pre_g, suf_g) = (pre(f), suf(f), pre(g), suf(g));
        // min over exponents ≤ x (resp. ≥ x), including tails.
        let prefix = |s: &Self, table: &[i64], x: i64| -> i64 {
            if x < s.lo {
                s.below
            } else if x > s.hi() {
                min_bound(table[table.len() - 1], s.above)
            } else {
                table[(x - s.lo) as usize]
            }
        };
        let suffix = |s: &Self, table: &[i64], x: i64| -> i64 {
            if x > s.hi() {
                s.above
            } else if x < s.lo {
                min_bound(table[0], s.below)
            } else {
                table[(x - s.lo) as usize]
            }
        };
        let lo = f.lo + g.lo;
        let hi = f.hi() + g.hi();
        let mut coeffs = Vec::with_capacity((hi - lo + 1) as usize);
        for k in lo..=hi {
            let mut sum = PAdicElement::zero(&self.field);
            let i_min = f.lo.max(k - g.hi());
            let i_max = f.hi().min(k - g.lo);
            for i in i_min..=i_max {
                let a = &f.coeffs[(i - f.lo) as usize];
                let b = &g.coeffs[(k - i - g.lo) as usize];
                if a.is_exact_zero() || b.is_exact_zero() {
                    continue;
                }
                sum = &sum + &(a * b);
            }
            let err = [
                add_bound(f.below, suffix(g, &suf_g, k - f.lo + 1)),
                add_bound(f.above, prefix(g, &pre_g, k - f.hi() - 1)),
                add_bound(g.below, suffix(f, &suf_f, k - g.lo + 1)),
                add_bound(g.above, prefix(f, &pre_f, k - g.hi() - 1)),
            ]
            .into_iter()
            .min()
            .unwrap();
            coeffs.push(if err < INFINITE { sum.cap_abs(err) } else { sum });
        }
        let min_f = f.min_ord();
        let min_g = g.min_ord();
        let below = min_bound(add_bound(f.below, min_g), add_bound(g.below, min_f));
        let above = min_bound(add_bound(f.above, min_g), add_bound(g.above, min_f));
        Self::new(&self.field, lo, coeffs, below, above)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.field);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Unit of `R⟨u⟩` certificate: integral, unit constant term, and every
    /// negative-exponent coefficient in the maximal ideal.
    pub fn is_unit(&self) -> bool {
        let c0 = self.coeff(0);
        if c0.is_zero() || c0.ord_bound() != 0 {
            return false;
        }
        if self.below < 1 || self.above < 0 {
            return false;
        }
        (self.lo..=self.hi()).all(|k| {
            let b = self.coeff(k).ord_bound();
            if k < 0 {
                b >= 1
            } else {
                b >= 0
            }
        })
    }

    /// Inverse of a unit, on the same window.
    pub fn invert_unit(&self) -> Result<Self, SeriesError> {
        if !self.is_unit() {
            return Err(SeriesError::NotAUnit);
        }
        let field = &self.field;
        let target = field.precision() as i64;
        let (lo, hi) = (self.lo.min(0), self.hi().max(0));
        let c0_inv = self.coeff(0).inverse()?;
        let v = self.scale(&c0_inv);

        // 1 + h₊ on [0, hi], inverted as a power series.
        let plus: Vec<PAdicElement> = (0..=hi).map(|k| v.coeff(k)).collect();
        let m_plus = plus[1..].iter().map(|c| c.ord_bound()).fold(v.above, i64::min);
        let mut q: Vec<PAdicElement> = Vec::with_capacity(plus.len());
        q.push(PAdicElement::one(field));
        for k in 1..=hi as usize {
            let mut s = PAdicElement::zero(field);
            for i in 1..=k {
                if plus[i].is_exact_zero() {
                    continue;
                }
                s = &s + &(&plus[i] * &q[k - i]);
            }
            q.push(-s);
        }
        let q_inv = Self::new(field, 0, q, INFINITE, m_plus);

        // g = h₋ · (1 + h₊)^{-1}, all valuations ≥ 1.
        let minus = if lo < 0 {
            Self::new(field, lo, (lo..0).map(|k| v.coeff(k)).collect(), v.below, INFINITE)
        } else {
            Self::new(field, 0, vec![PAdicElement::zero(field)], v.below, INFINITE)
        };
        let g = minus.mul(&q_inv).clip(lo, hi);
        let mut w = Self::one(field).clip(lo, hi);
        let neg_g = g.neg();
        let mut term = w.clone();
        loop {
            let m = term.min_ord();
            if m >= target {
                break;
            }
            let next = term.mul(&neg_g).clip(lo, hi);
            if next.min_ord() <= m {
                return Err(SeriesError::UncertifiableTail);
            }
            term = next;
            w = w.add(&term);
        }
        let w = w.cap(target);
        Ok(q_inv.mul(&w).clip(lo, hi).scale(&c0_inv))
    }

    /// Caps every coefficient and tail at absolute precision `abs`.
    pub fn cap(&self, abs: i64) -> Self {
        Self::new(
            &self.field,
            self.lo,
            self.coeffs.iter().map(|c| c.cap_abs(abs)).collect(),
            self.below.min(abs),
            self.above.min(abs),
        )
    }

    /// Sum of window coefficients, i.e. the value at `u = 1` when both tails vanish to `abs`.
    pub fn sum_coefficients(&self) -> PAdicElement {
        let mut s = PAdicElement::zero(&self.field);
        for c in &self.coeffs {
            s = &s + c;
        }
        let t = self.below.min(self.above);
        if t < INFINITE {
            s.cap_abs(t)
        } else {
            s
        }
    }
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "LaurentSeries[{}..{}] tails(below ≥ {}, above ≥ {})", self.lo, self.hi(), self.below, self.above)?;
        for (i, c) in self.coeffs.iter().enumerate() {
            writeln!(f, "  u^{}: {}", self.lo + i as i64, c)?;
        }
        Ok(())
    }
}
