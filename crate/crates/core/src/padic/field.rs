//! Finite extensions of Q_p as a two-level tower: an unramified base
//! `W = Z_p[y]/(g)` under an Eisenstein top `R = W[x]/(E)`.
//!
//! Ring elements are stored as `e·f` integer coefficients modulo `p^M`,
//! index `i·f + j` holding the coefficient of `π^i y^j`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly_fp;
use super::PAdicError;

pub(crate) type Raw = Vec<BigInt>;

/// Description of a local field `K` together with its working precision.
#[derive(Clone)]
pub struct FieldSpec {
    pub(crate) data: Arc<FieldData>,
}

pub(crate) struct FieldData {
    pub p: u64,
    pub p_big: BigInt,
    pub e: usize,
    pub f: usize,
    pub unram: Vec<BigInt>,
    pub eis: Vec<BigInt>,
    pub precision: u32,
    pub digits: u32,
    pub modulus: BigInt,
    pub eps_inv: Raw,
    pub residue_size: u64,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn check_monic(poly: &[i64]) -> Result<(), PAdicError> {
    match poly.last() {
        Some(1) if poly.len() >= 2 => Ok(()),
        _ => Err(PAdicError::InvalidField(
            "defining polynomial must be monic of degree at least 1".into(),
        )),
    }
}

fn is_eisenstein(poly: &[i64], p: u64) -> bool {
    let p = p as i64;
    let n = poly.len() - 1;
    poly[..n].iter().all(|c| c % p == 0) && poly[0] % (p * p) != 0
}

fn reduce_mod_p(poly: &[i64], p: u64) -> Vec<u64> {
    let p = p as i64;
    poly.iter().map(|c| c.rem_euclid(p) as u64).collect()
}

/// `ord_p` of a nonzero integer.
pub(crate) fn ord_p_int(x: &BigInt, p: &BigInt) -> u64 {
    debug_assert!(!x.is_zero());
    let mut v = 0;
    let mut x = x.clone();
    loop {
        let (q, r) = x.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        x = q;
        v += 1;
    }
}

impl FieldSpec {
    /// The field `Q_p` with `precision` significant digits.
    pub fn qp(p: u64, precision: u32) -> Result<Self, PAdicError> {
        Self::tower(p, &[0, 1], &[-(p as i64), 1], precision)
    }

    /// A single defining polynomial (coefficients low to high), classified as
    /// Eisenstein (totally ramified) or irreducible mod p (unramified).
    pub fn new(p: u64, poly: &[i64], precision: u32) -> Result<Self, PAdicError> {
        check_monic(poly)?;
        if !is_prime(p) {
            return Err(PAdicError::InvalidField(format!("{p} is not prime")));
        }
        if poly.len() == 2 {
            return Self::qp(p, precision);
        }
        if is_eisenstein(poly, p) {
            Self::tower(p, &[0, 1], poly, precision)
        } else if poly_fp::is_irreducible(&reduce_mod_p(poly, p), p) {
            Self::tower(p, poly, &[-(p as i64), 1], precision)
        } else {
            Err(PAdicError::InvalidField(format!(
                "polynomial {poly:?} is neither Eisenstein nor irreducible mod {p}"
            )))
        }
    }

    /// Two-level tower: `unramified` irreducible mod p, then `eisenstein` over it.
    pub fn tower(
        p: u64,
        unramified: &[i64],
        eisenstein: &[i64],
        precision: u32,
    ) -> Result<Self, PAdicError> {
        if !is_prime(p) {
            return Err(PAdicError::InvalidField(format!("{p} is not prime")));
        }
        check_monic(unramified)?;
        check_monic(eisenstein)?;
        if precision == 0 {
            return Err(PAdicError::InvalidField("precision must be positive".into()));
        }
        if !poly_fp::is_irreducible(&reduce_mod_p(unramified, p), p) {
            return Err(PAdicError::InvalidField(format!(
                "base polynomial {unramified:?} is reducible mod {p}"
            )));
        }
        if !is_eisenstein(eisenstein, p) {
            return Err(PAdicError::InvalidField(format!(
                "top polynomial {eisenstein:?} is not Eisenstein at {p}"
            )));
        }
        let f = unramified.len() - 1;
        let e = eisenstein.len() - 1;
        let residue_size = (p as u128).pow(f as u32);
        if residue_size > u32::MAX as u128 {
            return Err(PAdicError::InvalidField("residue field too large".into()));
        }
        let digits = (precision as usize).div_ceil(e) as u32 + 2;
        let p_big = BigInt::from(p);
        let modulus = p_big.pow(digits);
        let mut data = FieldData {
            p,
            p_big: p_big.clone(),
            e,
            f,
            unram: unramified.iter().map(|&c| BigInt::from(c)).collect(),
            eis: eisenstein.iter().map(|&c| BigInt::from(c)).collect(),
            precision,
            digits,
            modulus,
            eps_inv: Vec::new(),
            residue_size: residue_size as u64,
        };
        // π^e = p·ε with ε = −Σ (a_i/p) π^i.
        let mut eps = data.zero_raw();
        for i in 0..e {
            eps[i * f] = -(&data.eis[i] / &p_big);
        }
        data.reduce(&mut eps);
        data.eps_inv = data.inv_unit_raw(&eps);
        Ok(FieldSpec { data: Arc::new(data) })
    }

    pub fn p(&self) -> u64 {
        self.data.p
    }
    /// Ramification index.
    pub fn e(&self) -> usize {
        self.data.e
    }
    /// Residue degree.
    pub fn f(&self) -> usize {
        self.data.f
    }
    pub fn degree(&self) -> usize {
        self.data.e * self.data.f
    }
    /// Relative precision cap in π-digits.
    pub fn precision(&self) -> u32 {
        self.data.precision
    }
    /// Size `p^f` of the residue field.
    pub fn residue_size(&self) -> u64 {
        self.data.residue_size
    }
    pub fn base_polynomial(&self) -> Vec<BigInt> {
        self.data.unram.clone()
    }
    pub fn top_polynomial(&self) -> Vec<BigInt> {
        self.data.eis.clone()
    }

    /// Same field at a different precision.
    pub fn with_precision(&self, precision: u32) -> Result<Self, PAdicError> {
        let to_i64 = |v: &[BigInt]| v.iter().map(|c| c.to_i64().unwrap()).collect::<Vec<_>>();
        Self::tower(self.p(), &to_i64(&self.data.unram), &to_i64(&self.data.eis), precision)
    }

    pub fn same_field(&self, other: &FieldSpec) -> bool {
        Arc::ptr_eq(&self.data, &other.data)
            || (self.data.p == other.data.p
                && self.data.precision == other.data.precision
                && self.data.unram == other.data.unram
                && self.data.eis == other.data.eis)
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FieldSpec(p={}, e={}, f={}, N={})",
            self.data.p, self.data.e, self.data.f, self.data.precision
        )
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[BigInt]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",");
        write!(
            f,
            "p={}; base={}; top={}; precision={}",
            self.data.p,
            join(&self.data.unram),
            join(&self.data.eis),
            self.data.precision
        )
    }
}

/// Parses `p=5; poly=1,0,1; precision=40` or the tower form
/// `p=5; base=2,0,1; top=-5,0,1; precision=40` (coefficients low to high).
impl FromStr for FieldSpec {
    type Err = PAdicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = None;
        let mut poly = None;
        let mut base = None;
        let mut top = None;
        let mut precision = None;
        let parse_list = |v: &str| -> Result<Vec<i64>, PAdicError> {
            v.split(',')
                .map(|c| {
                    c.trim()
                        .parse::<i64>()
                        .map_err(|_| PAdicError::Parse(format!("bad coefficient `{c}`")))
                })
                .collect()
        };
        for part in s.split(';').map(str::trim).filter(|x| !x.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| PAdicError::Parse(format!("expected key=value, got `{part}`")))?;
            let v = v.trim();
            match k.trim() {
                "p" => p = Some(v.parse::<u64>().map_err(|_| PAdicError::Parse(format!("bad prime `{v}`")))?),
                "poly" => poly = Some(parse_list(v)?),
                "base" => base = Some(parse_list(v)?),
                "top" => top = Some(parse_list(v)?),
                "precision" => {
                    precision = Some(v.parse::<u32>().map_err(|_| PAdicError::Parse(format!("bad precision `{v}`")))?)
                }
                other => return Err(PAdicError::Parse(format!("unknown key `{other}`"))),
            }
        }
        let p = p.ok_or_else(|| PAdicError::Parse("missing p".into()))?;
        let precision = precision.ok_or_else(|| PAdicError::Parse("missing precision".into()))?;
        match (poly, base, top) {
            (None, None, None) => FieldSpec::qp(p, precision),
            (Some(poly), None, None) => FieldSpec::new(p, &poly, precision),
            (None, base, top) => FieldSpec::tower(
                p,
                &base.unwrap_or_else(|| vec![0, 1]),
                &top.unwrap_or_else(|| vec![-(p as i64), 1]),
                precision,
            ),
            _ => Err(PAdicError::Parse("give either poly or base/top".into())),
        }
    }
}

impl FieldData {
    pub fn dim(&self) -> usize {
        self.e * self.f
    }

    pub fn zero_raw(&self) -> Raw {
        vec![BigInt::zero(); self.dim()]
    }

    pub fn one_raw(&self) -> Raw {
        self.int_raw(&BigInt::one())
    }

    pub fn int_raw(&self, n: &BigInt) -> Raw {
        let mut r = self.zero_raw();
        r[0] = n.mod_floor(&self.modulus);
        r
    }

    pub fn reduce(&self, a: &mut Raw) {
        for c in a.iter_mut() {
            if c.is_negative() || *c >= self.modulus {
                *c = c.mod_floor(&self.modulus);
            }
        }
    }

    pub fn add_raw(&self, a: &Raw, b: &Raw) -> Raw {
        let mut r: Raw = a.iter().zip(b).map(|(x, y)| x + y).collect();
        self.reduce(&mut r);
        r
    }

    pub fn sub_raw(&self, a: &Raw, b: &Raw) -> Raw {
        let mut r: Raw = a.iter().zip(b).map(|(x, y)| x - y).collect();
        self.reduce(&mut r);
        r
    }

    pub fn neg_raw(&self, a: &Raw) -> Raw {
        let mut r: Raw = a.iter().map(|x| -x).collect();
        self.reduce(&mut r);
        r
    }

    pub fn scale_raw(&self, a: &Raw, k: &BigInt) -> Raw {
        let mut r: Raw = a.iter().map(|x| x * k).collect();
        self.reduce(&mut r);
        r
    }

    pub fn mul_raw(&self, a: &Raw, b: &Raw) -> Raw {
        let (e, f) = (self.e, self.f);
        if e == 1 && f == 1 {
            return vec![(&a[0] * &b[0]).mod_floor(&self.modulus)];
        }
        let mut t = vec![vec![BigInt::zero(); 2 * f - 1]; 2 * e - 1];
        for i1 in 0..e {
            for j1 in 0..f {
                let x = &a[i1 * f + j1];
                if x.is_zero() {
                    continue;
                }
                for i2 in 0..e {
                    for j2 in 0..f {
                        let y = &b[i2 * f + j2];
                        if !y.is_zero() {
                            t[i1 + i2][j1 + j2] += x * y;
                        }
                    }
                }
            }
        }
        for row in t.iter_mut() {
            for deg in (f..2 * f - 1).rev() {
                let c = std::mem::take(&mut row[deg]);
                if c.is_zero() {
                    continue;
                }
                for k in 0..f {
                    row[deg - f + k] -= &c * &self.unram[k];
                }
            }
            row.truncate(f);
        }
        for deg in (e..2 * e - 1).rev() {
            let row = std::mem::take(&mut t[deg]);
            for k in 0..e {
                let a_k = &self.eis[k];
                if a_k.is_zero() {
                    continue;
                }
                for (j, c) in row.iter().enumerate() {
                    t[deg - e + k][j] -= a_k * c;
                }
            }
        }
        let mut out: Raw = t.into_iter().take(e).flatten().collect();
        self.reduce(&mut out);
        out
    }

    pub fn pow_raw(&self, a: &Raw, mut k: u64) -> Raw {
        let mut acc = self.one_raw();
        let mut base = a.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul_raw(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul_raw(&base, &base);
            }
        }
        acc
    }

    /// `ord_π`, or `None` when the stored value is zero.
    pub fn ord_raw(&self, a: &Raw) -> Option<u64> {
        let (e, f) = (self.e, self.f);
        let mut best: Option<u64> = None;
        for i in 0..e {
            let mut w: Option<u64> = None;
            for j in 0..f {
                let c = &a[i * f + j];
                if !c.is_zero() {
                    let o = ord_p_int(c, &self.p_big);
                    w = Some(w.map_or(o, |x| x.min(o)));
                }
            }
            if let Some(o) = w {
                let v = e as u64 * o + i as u64;
                best = Some(best.map_or(v, |x| x.min(v)));
            }
        }
        best
    }

    fn pi_power_basis(&self, r: usize) -> Raw {
        let mut b = self.zero_raw();
        b[r * self.f] = BigInt::one();
        b
    }

    pub fn mul_pi_pow(&self, a: &Raw, t: u64) -> Raw {
        let q = t / self.e as u64;
        let r = (t % self.e as u64) as usize;
        if q >= self.digits as u64 {
            return self.zero_raw();
        }
        let mut out = self.scale_raw(a, &self.p_big.pow(q as u32));
        if r > 0 {
            out = self.mul_raw(&out, &self.pi_power_basis(r));
        }
        out
    }

    /// `a / π^t` for `ord(a) ≥ t`.
    pub fn div_pi_pow(&self, a: &Raw, t: u64) -> Raw {
        let q = (t / self.e as u64) as u32;
        let r = (t % self.e as u64) as usize;
        let mut out: Raw = if q > 0 {
            let d = self.p_big.pow(q);
            a.iter().map(|c| c / &d).collect()
        } else {
            a.clone()
        };
        if r > 0 {
            let c = self.mul_raw(&out, &self.pi_power_basis(self.e - r));
            let c: Raw = c.iter().map(|x| x / &self.p_big).collect();
            out = self.mul_raw(&c, &self.eps_inv);
        }
        self.reduce(&mut out);
        out
    }

    pub fn inv_unit_raw(&self, a: &Raw) -> Raw {
        let start = self.pow_raw(a, self.residue_size.saturating_sub(2));
        let two = self.int_raw(&BigInt::from(2));
        let mut x = start;
        let mut correct: u64 = 1;
        let target = (self.e as u64) * self.digits as u64;
        while correct < target {
            let ax = self.mul_raw(a, &x);
            x = self.mul_raw(&x, &self.sub_raw(&two, &ax));
            correct *= 2;
        }
        x
    }

    /// Residue of the `π^0` coefficient as digits in `[0, p)`.
    pub fn residue_digits(&self, a: &Raw) -> Vec<u64> {
        (0..self.f)
            .map(|j| a[j].mod_floor(&self.p_big).to_u64().unwrap())
            .collect()
    }

    pub fn raw_from_residue(&self, digits: &[u64]) -> Raw {
        let mut r = self.zero_raw();
        for (j, &d) in digits.iter().enumerate().take(self.f) {
            r[j] = BigInt::from(d % self.p);
        }
        r
    }
}
