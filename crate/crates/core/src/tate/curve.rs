use num_bigint::BigInt;

use crate::laurent::{power_threshold, LaurentSeries};
use crate::padic::{FieldSpec, PAdicElement};

use super::TateError;

/// A Tate curve with period `q`, `ord(q) > 0`.
#[derive(Clone, Debug)]
pub struct TateCurve {
    field: FieldSpec,
    q: PAdicElement,
    period: i64,
}

/// Outcome of the test `α ∈ q^Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeTest {
    /// `Some(k)` when `α = q^k` to working precision.
    pub index: Option<i64>,
    /// For members, the precision of the comparison; otherwise `ord(α/q^k − 1)`.
    pub margin: i64,
}

fn ceil_div(a: i64, b: i64) -> i64 {
    (a + b - 1).div_euclid(b)
}

impl TateCurve {
    pub fn new(q: &PAdicElement) -> Result<Self, TateError> {
        let period = q.ord().map_err(|_| TateError::InvalidPeriod)?;
        if period <= 0 {
            return Err(TateError::InvalidPeriod);
        }
        // Δ = q∏(1 − qⁿ)²⁴ is q times a principal unit, hence nonzero.
        Ok(TateCurve { field: q.field().clone(), q: q.clone(), period })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn q(&self) -> &PAdicElement {
        &self.q
    }

    /// `ord(q)`.
    pub fn period(&self) -> i64 {
        self.period
    }

    fn target(&self) -> i64 {
        self.field.precision() as i64
    }

    fn one(&self) -> PAdicElement {
        PAdicElement::one(&self.field)
    }

    pub fn same_curve(&self, other: &TateCurve) -> bool {
        self.field.same_field(&other.field) && self.q.approx_eq(&other.q)
    }

    /// `α = q^k·α₀` with `0 ≤ ord(α₀) < ord(q)`.
    pub fn reduce_to_annulus(&self, alpha: &PAdicElement) -> Result<(i64, PAdicElement), TateError> {
        let k = alpha.ord()?.div_euclid(self.period);
        Ok((k, alpha * &self.q.pow(-k)?))
    }

    pub fn lattice_test(&self, alpha: &PAdicElement) -> Result<LatticeTest, TateError> {
        let (k, a0) = self.reduce_to_annulus(alpha)?;
        let diff = &a0 - &self.one();
        if diff.is_zero() {
            Ok(LatticeTest { index: Some(k), margin: diff.abs_precision() })
        } else {
            Ok(LatticeTest { index: None, margin: diff.ord_bound() })
        }
    }

    pub fn in_lattice(&self, alpha: &PAdicElement) -> Result<bool, TateError> {
        Ok(self.lattice_test(alpha)?.index.is_some())
    }

    /// Smallest `k_max` for which the omitted factors of `θ(βu)` agree with 1
    /// beyond the working precision, for `ord(β) = shift_ord`.
    pub fn k_max_for(&self, shift_ord: i64) -> u32 {
        (ceil_div(self.target() + shift_ord.abs(), self.period) - 1).max(0) as u32
    }

    /// `(1−u)∏_{k≤k_max}(1−qᵏu)(1−qᵏu⁻¹)` on `[−window, window]`.
    pub fn theta_series(&self, window: i64, k_max: u32) -> Result<LaurentSeries, TateError> {
        self.theta_shifted_series(&self.one(), window, k_max)
    }

    /// The expansion of `θ(βu)` for `0 ≤ ord(β) ≤ ord(q)`, built from the product.
    pub fn theta_shifted_series(
        &self,
        beta: &PAdicElement,
        window: i64,
        k_max: u32,
    ) -> Result<LaurentSeries, TateError> {
        let s = beta.ord()?;
        if s < 0 || s > self.period {
            return Err(TateError::ShiftOutsideAnnulus { ord: s });
        }
        if window < 1 {
            return Err(TateError::PrecisionMismatch(format!("window {window} < 1")));
        }
        let omitted = (k_max as i64 + 1) * self.period - s;
        if omitted < self.target() {
            return Err(TateError::PrecisionMismatch(format!(
                "k_max = {k_max} gives only {omitted} of {} digits",
                self.target()
            )));
        }
        let beta_inv = beta.inverse()?;
        let mut acc = LaurentSeries::binomial(beta, 1).clip(-window, window);
        let mut qk = self.q.clone();
        for _ in 1..=k_max {
            acc = acc.mul(&LaurentSeries::binomial(&(&qk * beta), 1)).clip(-window, window);
            acc = acc.mul(&LaurentSeries::binomial(&(&qk * &beta_inv), -1)).clip(-window, window);
            qk = &qk * &self.q;
        }
        let floor = acc.min_ord().min(0);
        Ok(acc.cap(floor + omitted))
    }

    /// `θ(α)` from the product, or exact zero for `α ∈ q^Z`.
    pub fn theta_eval(&self, alpha: &PAdicElement) -> Result<PAdicElement, TateError> {
        if self.in_lattice(alpha)? {
            return Ok(PAdicElement::zero(&self.field));
        }
        let s = alpha.ord()?;
        let k_max = self.k_max_for(s) as i64;
        let one = self.one();
        let inv = alpha.inverse()?;
        let mut acc = &one - alpha;
        let mut qk = self.q.clone();
        for _ in 1..=k_max {
            acc = &acc * &(&one - &(&qk * alpha));
            acc = &acc * &(&one - &(&qk * &inv));
            qk = &qk * &self.q;
        }
        let relative = (k_max + 1) * self.period - s.abs();
        Ok(acc.cap_abs(acc.ord_bound() + relative))
    }

    /// `∏_{n≥1}(1 − qⁿ)`.
    pub fn euler_product(&self) -> PAdicElement {
        let k_max = self.k_max_for(0) as i64;
        let one = self.one();
        let mut acc = one.clone();
        let mut qk = self.q.clone();
        for _ in 1..=k_max {
            acc = &acc * &(&one - &qk);
            qk = &qk * &self.q;
        }
        acc.cap_abs((k_max + 1) * self.period)
    }

    /// `θ'(1) = −∏(1 − qⁿ)²`.
    pub fn theta_derivative_at_one(&self) -> PAdicElement {
        let e = self.euler_product();
        -(&e * &e)
    }

    /// `Σ_{n≥1} n^k qⁿ/(1 − qⁿ)`, each integer weight given by `weight(n)`.
    fn lambert_sum(&self, weight: impl Fn(u64) -> BigInt) -> PAdicElement {
        let n_max = ceil_div(self.target(), self.period) + 1;
        let one = self.one();
        let mut acc = PAdicElement::zero(&self.field);
        let mut qn = self.q.clone();
        for n in 1..=n_max as u64 {
            let term = &PAdicElement::from_bigint(&self.field, &weight(n)) * &qn;
            let denom = (&one - &qn).inverse().expect("1 − qⁿ is a unit");
            acc = &acc + &(&term * &denom);
            qn = &qn * &self.q;
        }
        acc.cap_abs((n_max + 1) * self.period)
    }

    /// `(a₄, a₆)` for `y² + xy = x³ + a₄x + a₆`.
    pub fn curve_coefficients(&self) -> (PAdicElement, PAdicElement) {
        let a4 = self.lambert_sum(|n| BigInt::from(-5) * BigInt::from(n).pow(3));
        let a6 = self.lambert_sum(|n| {
            let n = BigInt::from(n);
            let w: BigInt = BigInt::from(5) * n.pow(3) + BigInt::from(7) * n.pow(5);
            -(w / BigInt::from(12))
        });
        (a4, a6)
    }

    /// `s₁ = Σ n qⁿ/(1 − qⁿ)`.
    pub fn s1(&self) -> PAdicElement {
        self.lambert_sum(BigInt::from)
    }

    /// `S(α) = ∏_{k≥1}((1 − αqᵏ)/(1 − α⁻¹qᵏ))ᵏ` modulo `p^ν`-th powers: each
    /// factor `1 − x` with `ord(x)` beyond the power threshold is omitted.
    pub fn s_value(&self, alpha: &PAdicElement, nu: u32) -> Result<PAdicElement, TateError> {
        let test = self.lattice_test(alpha)?;
        match test.index {
            Some(0) => return Ok(self.one()),
            Some(_) => return Err(TateError::LatticePoint),
            None => {}
        }
        let threshold = power_threshold(&self.field, nu);
        let one = self.one();
        let inv = alpha.inverse()?;
        let mut num = one.clone();
        let mut den = one.clone();
        let mut qk = self.q.clone();
        let mut k = 1i64;
        loop {
            let x = &qk * alpha;
            let y = &qk * &inv;
            let (keep_x, keep_y) = (x.ord_bound() <= threshold, y.ord_bound() <= threshold);
            if !keep_x && !keep_y {
                break;
            }
            if keep_x {
                num = &num * &(&one - &x).pow(k)?;
            }
            if keep_y {
                den = &den * &(&one - &y).pow(k)?;
            }
            qk = &qk * &self.q;
            k += 1;
        }
        Ok(num.try_div(&den)?)
    }
}
