//! The Tate curve `E = K*/q^Z`: theta function, Weierstrass data, points,
//! the products `S(α)`, and theta quotients as functions on `E`.

mod curve;
mod product;
mod weierstrass;

pub use curve::{LatticeTest, TateCurve};
pub use product::{LocalData, ThetaFactor, ThetaProduct};
pub use weierstrass::{CurvePoint, WeierstrassCurve};

use crate::laurent::SeriesError;
use crate::padic::PAdicError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TateError {
    #[error(transparent)]
    PAdic(#[from] PAdicError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("the period must satisfy 0 < ord(q) < ∞")]
    InvalidPeriod,
    #[error("shift of valuation {ord} lies outside the closed fundamental annulus")]
    ShiftOutsideAnnulus { ord: i64 },
    #[error("window or truncation too small: {0}")]
    PrecisionMismatch(String),
    #[error("argument lies in q^Z")]
    LatticePoint,
    #[error("theta product is not q-periodic")]
    NotPeriodic,
    #[error("function has a pole at the evaluation point")]
    Pole,
    #[error("theta products live on different curves")]
    CurveMismatch,
}
