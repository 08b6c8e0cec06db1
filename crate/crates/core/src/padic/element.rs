//! Elements of `K` in capped-relative form: `π^v · unit` with the unit known
//! modulo `π^rel`, plus exact and inexact zeros.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::field::{ord_p_int, FieldSpec, Raw};
use super::PAdicError;

/// Stand-in for `+∞` in precision and valuation bounds.
pub const INFINITE: i64 = i64::MAX / 8;

#[derive(Clone)]
pub(crate) enum Repr {
    Exact,
    Approx { abs: i64 },
    Unit { val: i64, unit: Raw, rel: u32 },
}

#[derive(Clone)]
pub struct PAdicElement {
    pub(crate) field: FieldSpec,
    pub(crate) repr: Repr,
}

/// Binary operation selector for [`field_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow(i64),
}

/// Checked arithmetic: rejects mixed fields and division by zero.
pub fn field_arith(
    x: &PAdicElement,
    y: &PAdicElement,
    op: ArithOp,
) -> Result<PAdicElement, PAdicError> {
    if !x.field.same_field(&y.field) {
        return Err(PAdicError::FieldMismatch);
    }
    match op {
        ArithOp::Add => Ok(x + y),
        ArithOp::Sub => Ok(x - y),
        ArithOp::Mul => Ok(x * y),
        ArithOp::Div => x.try_div(y),
        ArithOp::Pow(k) => x.pow(k),
    }
}

impl PAdicElement {
    pub fn zero(field: &FieldSpec) -> Self {
        PAdicElement { field: field.clone(), repr: Repr::Exact }
    }

    /// Zero known only modulo `π^abs`.
    pub fn approx_zero(field: &FieldSpec, abs: i64) -> Self {
        PAdicElement { field: field.clone(), repr: Repr::Approx { abs } }
    }

    pub fn one(field: &FieldSpec) -> Self {
        Self::from_int(field, 1)
    }

    pub fn from_int(field: &FieldSpec, n: i64) -> Self {
        Self::from_bigint(field, &BigInt::from(n))
    }

    pub fn from_bigint(field: &FieldSpec, n: &BigInt) -> Self {
        if n.is_zero() {
            return Self::zero(field);
        }
        let d = &field.data;
        let k = ord_p_int(n, &d.p_big);
        let m = n / d.p_big.pow(k as u32);
        let unit = if k == 0 {
            d.int_raw(&m)
        } else {
            d.mul_raw(&d.int_raw(&m), &d.pow_raw(&d.eps_inv, k))
        };
        PAdicElement {
            field: field.clone(),
            repr: Repr::Unit { val: (d.e as u64 * k) as i64, unit, rel: d.precision },
        }
    }

    pub fn from_rational(field: &FieldSpec, num: &BigInt, den: &BigInt) -> Result<Self, PAdicError> {
        Self::from_bigint(field, num).try_div(&Self::from_bigint(field, den))
    }

    /// The uniformizer π.
    pub fn uniformizer(field: &FieldSpec) -> Self {
        PAdicElement {
            field: field.clone(),
            repr: Repr::Unit { val: 1, unit: field.data.one_raw(), rel: field.data.precision },
        }
    }

    /// Element `Σ c[i·f+j] π^i y^j` from integer coefficients in the basis.
    pub fn from_basis(field: &FieldSpec, coeffs: &[BigInt]) -> Result<Self, PAdicError> {
        let d = &field.data;
        if coeffs.len() > d.dim() {
            return Err(PAdicError::InvalidArgument(format!(
                "expected at most {} coefficients",
                d.dim()
            )));
        }
        let mut raw = d.zero_raw();
        for (slot, c) in raw.iter_mut().zip(coeffs) {
            *slot = c.clone();
        }
        // Integer coefficients are exact; track p-adic content so large powers of p survive.
        let content = coeffs
            .iter()
            .filter(|c| !c.is_zero())
            .map(|c| ord_p_int(c, &d.p_big))
            .min();
        let Some(k) = content else {
            return Ok(Self::zero(field));
        };
        let pk = d.p_big.pow(k as u32);
        let mut reduced: Raw = raw.iter().map(|c| c / &pk).collect();
        d.reduce(&mut reduced);
        let inner = Self::normalize(field, reduced, 0, d.precision as i64 + field.e() as i64);
        Ok(&inner * &Self::from_bigint(field, &pk))
    }

    /// Residue-field element with digits `d_j` in the basis `y^j`, lifted to the base ring.
    pub fn from_residue(field: &FieldSpec, digits: &[u64]) -> Self {
        if digits.iter().all(|&x| x % field.p() == 0) {
            return Self::zero(field);
        }
        let raw = field.data.raw_from_residue(digits);
        let k = field.data.precision as i64;
        Self::normalize(field, raw, 0, k)
    }

    /// Generator `y` of the unramified base (equals 1's image when `f = 1`).
    pub fn base_generator(field: &FieldSpec) -> Self {
        let mut digits = vec![0u64; field.f()];
        if field.f() > 1 {
            digits[1] = 1;
        } else {
            digits[0] = 1;
        }
        Self::from_residue(field, &digits)
    }

    /// Builds `π^shift · raw` with the raw value meaningful modulo `π^(abs − shift)`.
    pub(crate) fn normalize(field: &FieldSpec, raw: Raw, shift: i64, abs: i64) -> Self {
        let d = &field.data;
        match d.ord_raw(&raw) {
            Some(o) if shift + (o as i64) < abs => {
                let val = shift + o as i64;
                let unit = if o == 0 { raw } else { d.div_pi_pow(&raw, o) };
                let rel = (abs - val).min(d.precision as i64) as u32;
                PAdicElement { field: field.clone(), repr: Repr::Unit { val, unit, rel } }
            }
            _ => Self::approx_zero(field, abs),
        }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn is_exact_zero(&self) -> bool {
        matches!(self.repr, Repr::Exact)
    }

    /// Zero exactly or to the available precision.
    pub fn is_zero(&self) -> bool {
        !matches!(self.repr, Repr::Unit { .. })
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        (self - other).is_zero()
    }

    /// Normalized valuation, `ord(π) = 1`.
    pub fn ord(&self) -> Result<i64, PAdicError> {
        match &self.repr {
            Repr::Unit { val, .. } => Ok(*val),
            Repr::Exact => Err(PAdicError::ZeroValuation),
            Repr::Approx { abs } => Err(PAdicError::PrecisionExhausted { available: *abs }),
        }
    }

    /// Lower bound for the valuation: `val`, or `abs` for inexact zeros, or [`INFINITE`].
    pub fn ord_bound(&self) -> i64 {
        match &self.repr {
            Repr::Unit { val, .. } => *val,
            Repr::Approx { abs } => *abs,
            Repr::Exact => INFINITE,
        }
    }

    /// Absolute precision: the value is known modulo `π^abs`.
    pub fn abs_precision(&self) -> i64 {
        match &self.repr {
            Repr::Unit { val, rel, .. } => val + *rel as i64,
            Repr::Approx { abs } => *abs,
            Repr::Exact => INFINITE,
        }
    }

    /// Relative precision; zero for zeros.
    pub fn rel_precision(&self) -> u32 {
        match &self.repr {
            Repr::Unit { rel, .. } => *rel,
            _ => 0,
        }
    }

    /// Weakens the absolute precision to at most `abs`.
    pub fn cap_abs(&self, abs: i64) -> Self {
        let repr = match &self.repr {
            Repr::Exact => Repr::Approx { abs },
            Repr::Approx { abs: a } => Repr::Approx { abs: (*a).min(abs) },
            Repr::Unit { val, unit, rel } => {
                if *val >= abs {
                    Repr::Approx { abs }
                } else {
                    Repr::Unit {
                        val: *val,
                        unit: unit.clone(),
                        rel: (*rel as i64).min(abs - val) as u32,
                    }
                }
            }
        };
        PAdicElement { field: self.field.clone(), repr }
    }

    /// `x / π^ord(x)`.
    pub fn unit_part(&self) -> Result<Self, PAdicError> {
        match &self.repr {
            Repr::Unit { unit, rel, .. } => Ok(PAdicElement {
                field: self.field.clone(),
                repr: Repr::Unit { val: 0, unit: unit.clone(), rel: *rel },
            }),
            Repr::Exact => Err(PAdicError::ZeroValuation),
            Repr::Approx { abs } => Err(PAdicError::PrecisionExhausted { available: *abs }),
        }
    }

    /// Multiplication by `π^k`.
    pub fn shift(&self, k: i64) -> Self {
        let repr = match &self.repr {
            Repr::Exact => Repr::Exact,
            Repr::Approx { abs } => Repr::Approx { abs: abs + k },
            Repr::Unit { val, unit, rel } => Repr::Unit { val: val + k, unit: unit.clone(), rel: *rel },
        };
        PAdicElement { field: self.field.clone(), repr }
    }

    pub fn inverse(&self) -> Result<Self, PAdicError> {
        match &self.repr {
            Repr::Unit { val, unit, rel } => Ok(PAdicElement {
                field: self.field.clone(),
                repr: Repr::Unit { val: -val, unit: self.field.data.inv_unit_raw(unit), rel: *rel },
            }),
            Repr::Exact => Err(PAdicError::DivisionByZero),
            Repr::Approx { abs } => Err(PAdicError::PrecisionExhausted { available: *abs }),
        }
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, PAdicError> {
        Ok(self * &other.inverse()?)
    }

    pub fn pow(&self, k: i64) -> Result<Self, PAdicError> {
        if k == 0 {
            return Ok(Self::one(&self.field));
        }
        match &self.repr {
            Repr::Exact if k > 0 => Ok(self.clone()),
            Repr::Approx { abs } if k > 0 && *abs >= 0 => Ok(Self::approx_zero(&self.field, abs * k)),
            Repr::Unit { val, unit, rel } => {
                let d = &self.field.data;
                let mut u = d.pow_raw(unit, k.unsigned_abs());
                if k < 0 {
                    u = d.inv_unit_raw(&u);
                }
                Ok(PAdicElement {
                    field: self.field.clone(),
                    repr: Repr::Unit { val: val * k, unit: u, rel: *rel },
                })
            }
            Repr::Exact => Err(PAdicError::DivisionByZero),
            Repr::Approx { abs } => Err(PAdicError::PrecisionExhausted { available: *abs }),
        }
    }

    /// Residue of a unit, as digits of `F_q` in the basis `y^j`.
    pub fn residue(&self) -> Result<Vec<u64>, PAdicError> {
        match &self.repr {
            Repr::Unit { val: 0, unit, .. } => Ok(self.field.data.residue_digits(unit)),
            Repr::Unit { .. } => Err(PAdicError::NotAUnit),
            Repr::Exact => Err(PAdicError::ZeroValuation),
            Repr::Approx { abs } => Err(PAdicError::PrecisionExhausted { available: *abs }),
        }
    }

    /// Teichmüller lift `ω(x)` of a unit, by iterated `q`-th powers.
    pub fn teichmuller(&self) -> Result<Self, PAdicError> {
        let digits = self.residue()?;
        let d = &self.field.data;
        let mut t = d.raw_from_residue(&digits);
        for _ in 0..(d.e as u64 * d.digits as u64) {
            t = d.pow_raw(&t, d.residue_size);
        }
        Ok(PAdicElement {
            field: self.field.clone(),
            repr: Repr::Unit { val: 0, unit: t, rel: d.precision },
        })
    }

    /// π-adic digits of the unit part, little-endian, each a residue-field element.
    pub fn digits(&self) -> Vec<Vec<u64>> {
        let Repr::Unit { unit, rel, .. } = &self.repr else {
            return Vec::new();
        };
        let d = &self.field.data;
        let mut cur = unit.clone();
        let mut out = Vec::with_capacity(*rel as usize);
        for _ in 0..*rel {
            let digit = d.residue_digits(&cur);
            out.push(digit.clone());
            cur = d.sub_raw(&cur, &d.raw_from_residue(&digit));
            cur = d.div_pi_pow(&cur, 1);
        }
        out
    }

    /// For `K = Q_p`-valued integral elements: the representative in `[0, p^k)`.
    pub fn to_integer_mod(&self, k: u32) -> Result<BigInt, PAdicError> {
        let d = &self.field.data;
        if d.e != 1 || d.f != 1 {
            return Err(PAdicError::InvalidArgument("integer residues need K = Q_p".into()));
        }
        let m = d.p_big.pow(k);
        match &self.repr {
            Repr::Exact => Ok(BigInt::zero()),
            Repr::Approx { abs } if *abs >= k as i64 => Ok(BigInt::zero()),
            Repr::Unit { val, unit, rel } if *val >= 0 && val + *rel as i64 >= k as i64 => {
                Ok((&unit[0] * d.p_big.pow(*val as u32)).mod_floor(&m))
            }
            Repr::Unit { val, .. } if *val < 0 => Err(PAdicError::NotAUnit),
            _ => Err(PAdicError::PrecisionExhausted { available: self.abs_precision() }),
        }
    }

    fn check_field(&self, other: &Self) {
        assert!(
            self.field.same_field(&other.field),
            "p-adic operands from different fields"
        );
    }

    fn add_impl(&self, other: &Self) -> Self {
        self.check_field(other);
        let d = &self.field.data;
        match (&self.repr, &other.repr) {
            (Repr::Exact, _) => other.clone(),
            (_, Repr::Exact) => self.clone(),
            (Repr::Approx { abs: a }, Repr::Approx { abs: b }) => Self::approx_zero(&self.field, (*a).min(*b)),
            (Repr::Approx { abs: a }, Repr::Unit { .. }) => other.cap_abs(*a),
            (Repr::Unit { .. }, Repr::Approx { abs: a }) => self.cap_abs(*a),
            (Repr::Unit { val: v1, unit: u1, rel: r1 }, Repr::Unit { val: v2, unit: u2, rel: r2 }) => {
                let abs = (v1 + *r1 as i64).min(v2 + *r2 as i64);
                let m = (*v1).min(*v2);
                if m >= abs {
                    return Self::approx_zero(&self.field, abs);
                }
                let a = if *v1 > m { d.mul_pi_pow(u1, (v1 - m) as u64) } else { u1.clone() };
                let b = if *v2 > m { d.mul_pi_pow(u2, (v2 - m) as u64) } else { u2.clone() };
                Self::normalize(&self.field, d.add_raw(&a, &b), m, abs)
            }
        }
    }

    fn mul_impl(&self, other: &Self) -> Self {
        self.check_field(other);
        let repr = match (&self.repr, &other.repr) {
            (Repr::Exact, _) | (_, Repr::Exact) => Repr::Exact,
            (Repr::Approx { abs: a }, Repr::Approx { abs: b }) => Repr::Approx { abs: a + b },
            (Repr::Approx { abs }, Repr::Unit { val, .. }) | (Repr::Unit { val, .. }, Repr::Approx { abs }) => {
                Repr::Approx { abs: abs + val }
            }
            (Repr::Unit { val: v1, unit: u1, rel: r1 }, Repr::Unit { val: v2, unit: u2, rel: r2 }) => Repr::Unit {
                val: v1 + v2,
                unit: self.field.data.mul_raw(u1, u2),
                rel: (*r1).min(*r2),
            },
        };
        PAdicElement { field: self.field.clone(), repr }
    }

    fn neg_impl(&self) -> Self {
        let repr = match &self.repr {
            Repr::Unit { val, unit, rel } => Repr::Unit {
                val: *val,
                unit: self.field.data.neg_raw(unit),
                rel: *rel,
            },
            other => other.clone(),
        };
        PAdicElement { field: self.field.clone(), repr }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $impl_fn:ident) => {
        impl $trait<&PAdicElement> for &PAdicElement {
            type Output = PAdicElement;
            fn $method(self, rhs: &PAdicElement) -> PAdicElement {
                self.$impl_fn(rhs)
            }
        }
        impl $trait<PAdicElement> for PAdicElement {
            type Output = PAdicElement;
            fn $method(self, rhs: PAdicElement) -> PAdicElement {
                (&self).$impl_fn(&rhs)
            }
        }
        impl $trait<&PAdicElement> for PAdicElement {
            type Output = PAdicElement;
            fn $method(self, rhs: &PAdicElement) -> PAdicElement {
                (&self).$impl_fn(rhs)
            }
        }
        impl $trait<PAdicElement> for &PAdicElement {
            type Output = PAdicElement;
            fn $method(self, rhs: PAdicElement) -> PAdicElement {
                self.$impl_fn(&rhs)
            }
        }
    };
}

impl PAdicElement {
    fn sub_impl(&self, other: &Self) -> Self {
        self.add_impl(&other.neg_impl())
    }
}

forward_binop!(Add, add, add_impl);
forward_binop!(Sub, sub, sub_impl);
forward_binop!(Mul, mul, mul_impl);

impl Neg for &PAdicElement {
    type Output = PAdicElement;
    fn neg(self) -> PAdicElement {
        self.neg_impl()
    }
}

impl Neg for PAdicElement {
    type Output = PAdicElement;
    fn neg(self) -> PAdicElement {
        self.neg_impl()
    }
}

fn render_digit(d: &[u64]) -> String {
    if d.len() == 1 {
        d[0].to_string()
    } else {
        format!("({})", d.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
    }
}

/// `π^v·[d0 d1 …] + O(π^N)`, digits little-endian.
impl fmt::Display for PAdicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Exact => write!(f, "0"),
            Repr::Approx { abs } => write!(f, "O(π^{abs})"),
            Repr::Unit { val, rel, .. } => {
                let digits: Vec<String> = self.digits().iter().map(|d| render_digit(d)).collect();
                write!(f, "π^{}·[{}] + O(π^{})", val, digits.join(" "), val + *rel as i64)
            }
        }
    }
}

impl fmt::Debug for PAdicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
