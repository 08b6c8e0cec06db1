//! Truncated arithmetic in `R⟨u⟩`, the `π`-adic completion of `R[[u]][u^{-1}]`.

mod factored;
mod series;

pub use factored::{power_threshold, reduce_mod_power, BinomialFactor, FactoredSeries, PowerCertificate};
pub use series::LaurentSeries;

use num_bigint::BigInt;

use crate::padic::{PAdicElement, PAdicError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error(transparent)]
    PAdic(#[from] PAdicError),
    #[error("series operands belong to different fields")]
    FieldMismatch,
    #[error("series is not certified as a unit of R⟨u⟩")]
    NotAUnit,
    #[error("tail cannot be certified on this window")]
    UncertifiableTail,
    #[error("no certifiable coefficients remain in the window")]
    WindowUnderflow,
    #[error("logarithmic residue {0} is not a small integer")]
    NonIntegralResidue(String),
}

/// Operation selector for [`laurent_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Mul,
    InvertUnit,
}

/// Checked ring operations; `g` is ignored for `InvertUnit`.
pub fn laurent_arith(f: &LaurentSeries, g: &LaurentSeries, op: SeriesOp) -> Result<LaurentSeries, SeriesError> {
    if op != SeriesOp::InvertUnit && !f.field().same_field(g.field()) {
        return Err(SeriesError::FieldMismatch);
    }
    let out = match op {
        SeriesOp::Add => f.add(g),
        SeriesOp::Mul => f.mul(g),
        SeriesOp::InvertUnit => f.invert_unit()?,
    };
    if out.coeffs().iter().all(|c| c.is_zero() && c.abs_precision() <= 0) {
        return Err(SeriesError::WindowUnderflow);
    }
    Ok(out)
}

/// `Res(df/f) mod n` for `f = u^e · unit`.
pub fn residue_dlog(exponent: i64, unit: &LaurentSeries, n: u64) -> Result<u64, SeriesError> {
    let field = unit.field();
    let inv = unit.invert_unit()?;
    let dlog = unit.derivative().mul(&inv);
    let r = dlog.coeff(-1);
    let width = (unit.hi() - unit.lo() + 2) as f64;
    let digits_needed = (width * 2.0).log(field.p() as f64).ceil() as i64;
    let needed = field.e() as i64 * digits_needed.max(1);
    if r.abs_precision() < needed {
        return Err(SeriesError::UncertifiableTail);
    }
    let bound = width as i64;
    let k = (-bound..=bound)
        .find(|&k| (&r - &PAdicElement::from_bigint(field, &BigInt::from(k))).is_zero())
        .ok_or_else(|| SeriesError::NonIntegralResidue(r.to_string()))?;
    Ok((exponent + k).rem_euclid(n as i64) as u64)
}
