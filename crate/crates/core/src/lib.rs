//! p-adic theta functions on Tate curves, tame symbols on their function
//! fields, and the Bloch–Wigner side of the regulator over cyclotomic fields.
//!
//! Modules, bottom up:
//! - [`padic`]: finite extensions of `Q_p` with tracked precision.
//! - [`laurent`]: windowed Laurent series over the integers of `K`.
//! - [`tate`]: theta function, Weierstrass series, and `S(α)` on `K*/q^Z`.
//! - [`k2`]: tame symbols and the regulator projection on `K₂`.
//! - [`bloch`]: cyclotomic arithmetic, pre-Bloch elements, `D₂`, contour regulators.

pub mod bloch;
pub mod k2;
pub mod laurent;
pub mod padic;
pub mod tate;
