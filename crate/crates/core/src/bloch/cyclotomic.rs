//! Exact arithmetic in `Q(ζ_n)` on the power basis `1, ζ, …, ζ^{φ(n)−1}`.
//!
//! Odd `n` is stored as `2n` (the fields coincide), so `−1 = ζ^{n/2}` always
//! and embeddings are indexed uniformly by units modulo an even conductor.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::BlochError;
use crate::k2::Scalar;

/// Largest conductor accepted; `2n` for odd `n` up to this bound is also accepted.
pub const MAX_CONDUCTOR: u64 = 120;

/// `Q(ζ_n)` with `n` even.
#[derive(Debug)]
pub struct CyclotomicField {
    n: u64,
    /// Monic `Φ_n`, lowest degree first.
    modulus: Vec<i64>,
    /// `ζ^j` reduced, for `0 ≤ j < n`.
    powers: Vec<Vec<i64>>,
}

fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    // Φ_n = (xⁿ − 1) / ∏_{d | n, d < n} Φ_d, by exact long division.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            let den = cyclotomic_polynomial(d);
            num = divide_monic(&num, &den);
        }
    }
    num
}

fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![0i64; rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        for (j, &b) in den.iter().enumerate() {
            rem[i + j] -= c * b;
        }
    }
    quot
}

fn reduce_int(mut v: Vec<i64>, modulus: &[i64]) -> Vec<i64> {
    let deg = modulus.len() - 1;
    for i in (deg..v.len()).rev() {
        let c = v[i];
        if c != 0 {
            for (j, &m) in modulus.iter().enumerate() {
                v[i - deg + j] -= c * m;
            }
        }
    }
    v.truncate(deg);
    v.resize(deg, 0);
    v
}

impl CyclotomicField {
    /// The field for conductor `n ≥ 1`, shared across calls.
    pub fn get(n: u64) -> Result<Arc<CyclotomicField>, BlochError> {
        let admissible = n <= MAX_CONDUCTOR || (n % 4 == 2 && n / 2 <= MAX_CONDUCTOR);
        if n == 0 || !admissible {
            return Err(BlochError::Conductor(n));
        }
        let n = if n % 2 == 1 { 2 * n } else { n };
        static CACHE: OnceLock<Mutex<HashMap<u64, Arc<CyclotomicField>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        let mut guard = cache.lock().expect("cyclotomic cache poisoned");
        Ok(guard
            .entry(n)
            .or_insert_with(|| {
                let modulus = cyclotomic_polynomial(n);
                let powers = (0..n)
                    .map(|j| {
                        let mut v = vec![0i64; j as usize + 1];
                        v[j as usize] = 1;
                        reduce_int(v, &modulus)
                    })
                    .collect();
                Arc::new(CyclotomicField { n, modulus, powers })
            })
            .clone())
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    /// Exponents `k` of the embeddings `ζ ↦ e^{2πik/n}`, one per conjugate pair.
    pub fn embeddings(&self) -> Vec<u64> {
        if self.n == 2 {
            return vec![1];
        }
        (1..self.n / 2).filter(|k| k.gcd(&self.n) == 1).collect()
    }
}

/// An element of `Q(ζ_n)`.
#[derive(Clone)]
pub struct CyclotomicNumber {
    field: Arc<CyclotomicField>,
    coeffs: Vec<BigRational>,
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = lift_pair(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CyclotomicNumber {}

fn lift_pair(a: &CyclotomicNumber, b: &CyclotomicNumber) -> (CyclotomicNumber, CyclotomicNumber) {
    if a.field.n == b.field.n {
        return (a.clone(), b.clone());
    }
    let n = a.field.n.lcm(&b.field.n);
    (a.lift(n).expect("compositum too large"), b.lift(n).expect("compositum too large"))
}

impl CyclotomicNumber {
    pub fn from_rational(field: &Arc<CyclotomicField>, x: BigRational) -> Self {
        let mut coeffs = vec![BigRational::zero(); field.degree()];
        coeffs[0] = x;
        CyclotomicNumber { field: field.clone(), coeffs }
    }

    pub fn from_int(field: &Arc<CyclotomicField>, x: i64) -> Self {
        Self::from_rational(field, BigRational::from_integer(x.into()))
    }

    pub fn zero(field: &Arc<CyclotomicField>) -> Self {
        Self::from_int(field, 0)
    }

    pub fn one(field: &Arc<CyclotomicField>) -> Self {
        Self::from_int(field, 1)
    }

    /// `ζ_n^k` for the field's own conductor `n`.
    pub fn zeta_power(field: &Arc<CyclotomicField>, k: i64) -> Self {
        let j = k.rem_euclid(field.n as i64) as usize;
        let coeffs = field.powers[j].iter().map(|&c| BigRational::from_integer(c.into())).collect();
        CyclotomicNumber { field: field.clone(), coeffs }
    }

    /// `ζ_m^k`, in `Q(ζ_m)`.
    pub fn root_of_unity(m: u64, k: i64) -> Result<Self, BlochError> {
        let field = CyclotomicField::get(m)?;
        let step = (field.n / m) as i64;
        Ok(Self::zeta_power(&field, k * step))
    }

    /// `Σ cⱼζʲ` with arbitrary integer exponents.
    pub fn from_exponents(field: &Arc<CyclotomicField>, terms: &[(i64, BigRational)]) -> Self {
        let mut acc = Self::zero(field);
        for (j, c) in terms {
            acc = acc.plus(&Self::zeta_power(field, *j).scaled(c));
        }
        acc
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn conductor(&self) -> u64 {
        self.field.n
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The image in `Q(ζ_m)` for a multiple `m` of the conductor.
    pub fn lift(&self, m: u64) -> Result<Self, BlochError> {
        let target = CyclotomicField::get(m)?;
        if target.n % self.field.n != 0 {
            return Err(BlochError::Conductor(m));
        }
        if target.n == self.field.n {
            return Ok(self.clone());
        }
        let step = (target.n / self.field.n) as i64;
        let terms: Vec<_> = self.coeffs.iter().enumerate().map(|(j, c)| (j as i64 * step, c.clone())).collect();
        Ok(Self::from_exponents(&target, &terms))
    }

    fn scaled(&self, c: &BigRational) -> Self {
        CyclotomicNumber { field: self.field.clone(), coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// The automorphism `ζ ↦ ζˢ`, `gcd(s, n) = 1`.
    pub fn galois(&self, s: i64) -> Result<Self, BlochError> {
        if (s.rem_euclid(self.field.n as i64) as u64).gcd(&self.field.n) != 1 {
            return Err(BlochError::NotAUnit { s, n: self.field.n });
        }
        let terms: Vec<_> = self.coeffs.iter().enumerate().map(|(j, c)| (j as i64 * s, c.clone())).collect();
        Ok(Self::from_exponents(&self.field, &terms))
    }

    /// `k` with `self = ζ_n^k`, if `self` is a root of unity.
    pub fn root_exponent(&self) -> Option<u64> {
        if self.coeffs.iter().any(|c| !c.is_integer()) {
            return None;
        }
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| c.to_integer()).collect();
        self.field.powers.iter().position(|p| p.iter().zip(&ints).all(|(a, b)| BigInt::from(*a) == *b)).map(|j| j as u64)
    }

    /// `σ_k(self)` under `ζ ↦ e^{2πik/n}`.
    pub fn embed(&self, k: u64) -> Complex64 {
        let n = self.field.n as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let angle = std::f64::consts::TAU * ((k as u128 * j as u128) % self.field.n as u128) as f64 / n;
            acc += Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN), angle);
        }
        acc
    }

    fn binary(&self, other: &Self, op: impl Fn(&BigRational, &BigRational) -> BigRational) -> Self {
        let (a, b) = lift_pair(self, other);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| op(x, y)).collect();
        CyclotomicNumber { field: a.field, coeffs }
    }

    fn reduce(field: &Arc<CyclotomicField>, mut v: Vec<BigRational>) -> Self {
        let deg = field.degree();
        for i in (deg..v.len()).rev() {
            let c = v[i].clone();
            if !c.is_zero() {
                for (j, &m) in field.modulus.iter().enumerate() {
                    v[i - deg + j] -= &c * BigRational::from_integer(m.into());
                }
            }
        }
        v.resize(deg, BigRational::zero());
        CyclotomicNumber { field: field.clone(), coeffs: v }
    }

    fn multiply(&self, other: &Self) -> Self {
        let (a, b) = lift_pair(self, other);
        let mut v = vec![BigRational::zero(); 2 * a.coeffs.len()];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                v[i + j] += x * y;
            }
        }
        Self::reduce(&a.field, v)
    }

    /// Multiplicative inverse by the extended Euclidean algorithm against `Φ_n`.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let to_q = |v: &[i64]| v.iter().map(|&c| BigRational::from_integer(c.into())).collect::<Vec<_>>();
        let (mut r0, mut r1) = (to_q(&self.field.modulus), trim(self.coeffs.clone()));
        let (mut s0, mut s1) = (Vec::<BigRational>::new(), vec![BigRational::one()]);
        while !r1.is_empty() {
            let (q, r) = poly_divmod(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is a nonzero constant since Φ_n is irreducible.
        let c = r0[0].recip();
        Some(Self::reduce(&self.field, s0.iter().map(|x| x * &c).collect()))
    }
}

fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] -= x;
    }
    trim(out)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    if rem.len() <= db {
        return (Vec::new(), trim(rem));
    }
    let lead = b[db].recip();
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    for i in (0..quot.len()).rev() {
        let c = &rem[i + db] * &lead;
        for (j, y) in b.iter().enumerate() {
            rem[i + j] -= &c * y;
        }
        quot[i] = c;
    }
    rem.truncate(db);
    (trim(quot), trim(rem))
}

impl Scalar for CyclotomicNumber {
    fn one_like(&self) -> Self {
        Self::one(&self.field)
    }
    fn plus(&self, other: &Self) -> Self {
        self.binary(other, |x, y| x + y)
    }
    fn minus(&self, other: &Self) -> Self {
        self.binary(other, |x, y| x - y)
    }
    fn times(&self, other: &Self) -> Self {
        self.multiply(other)
    }
    fn negated(&self) -> Self {
        CyclotomicNumber { field: self.field.clone(), coeffs: self.coeffs.iter().map(|x| -x).collect() }
    }
    fn recip(&self) -> Option<Self> {
        self.inverse()
    }
    fn vanishes(&self) -> bool {
        self.is_zero()
    }
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(k) = self.root_exponent() {
            return write!(f, "ζ{}^{}", self.field.n, k);
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else if first { "" } else { "+" };
            let abs = c.abs();
            match j {
                0 => write!(f, "{sign}{abs}")?,
                _ if abs.is_one() => write!(f, "{sign}ζ{}^{j}", self.field.n)?,
                _ => write!(f, "{sign}{abs}·ζ{}^{j}", self.field.n)?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
