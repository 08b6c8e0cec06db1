//! The Bloch–Wigner side: exact cyclotomic arithmetic, pre-Bloch elements
//! and their Borel regulators, symbols on the nodal curve with `δ̄`, and the
//! Galois action on the basis `β₁`, `β₂`.

mod cyclotomic;
mod dilog;
mod galois;
mod nodal;
mod prebloch;

pub use cyclotomic::{CyclotomicField, CyclotomicNumber, MAX_CONDUCTOR};
pub use dilog::d2;
pub use galois::{galois_beta_check, GaloisIdentity, GaloisReport, TauCandidate};
pub use nodal::{
    bracket, contour_regulator, delta_bar, eta0, eta0_closed_form, ContourValue, NodalFunction, NodalMembership,
    NodalSymbol,
};
pub use prebloch::{distribution_relation, five_term, PreBlochElement, RegulatorVector};

use thiserror::Error;

use crate::k2::K2Error;

#[derive(Debug, Error)]
pub enum BlochError {
    #[error("conductor {0} is out of range or incompatible")]
    Conductor(u64),
    #[error("{s} is not a unit modulo {n}")]
    NotAUnit { s: i64, n: u64 },
    #[error("degenerate argument: {0}")]
    Degenerate(String),
    #[error("function does not take equal values at 0 and ∞")]
    NotNodal,
    #[error("tame symbol at {point} is {value}, not a root of unity")]
    MembershipFailed { point: String, value: String },
    #[error("ray at angle {angle} passes within {margin} of a zero or pole")]
    PathHitsDivisor { angle: f64, margin: f64 },
    #[error("quadrature did not converge (error estimate {error})")]
    Quadrature { error: f64 },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error(transparent)]
    K2(#[from] K2Error),
}
