//! The model `y² + xy = x³ + a₄x + a₆`, the series `X(u)`, `Y(u)`, and the
//! parametrization `K*/q^Z → E(K)`.

use crate::laurent::LaurentSeries;
use crate::padic::{PAdicElement, INFINITE};

use super::{TateCurve, TateError};

/// A point of `E(K)`.
#[derive(Clone, Debug)]
pub enum CurvePoint {
    Infinity,
    Affine { x: PAdicElement, y: PAdicElement },
}

impl CurvePoint {
    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }

    /// Equality of coordinates to working precision.
    pub fn approx_eq(&self, other: &CurvePoint) -> bool {
        match (self, other) {
            (CurvePoint::Infinity, CurvePoint::Infinity) => true,
            (CurvePoint::Affine { x: x1, y: y1 }, CurvePoint::Affine { x: x2, y: y2 }) => {
                x1.approx_eq(x2) && y1.approx_eq(y2)
            }
            _ => false,
        }
    }
}

/// Chord-tangent arithmetic on `y² + xy = x³ + a₄x + a₆`.
#[derive(Clone, Debug)]
pub struct WeierstrassCurve {
    pub a4: PAdicElement,
    pub a6: PAdicElement,
}

impl WeierstrassCurve {
    /// `y² + xy − x³ − a₄x − a₆` at an affine point.
    pub fn residual(&self, x: &PAdicElement, y: &PAdicElement) -> PAdicElement {
        let lhs = &(y * y) + &(x * y);
        let rhs = &(&(x * x) * x) + &(&(&self.a4 * x) + &self.a6);
        &lhs - &rhs
    }

    pub fn neg(&self, p: &CurvePoint) -> CurvePoint {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => CurvePoint::Affine { x: x.clone(), y: -&(y + x) },
        }
    }

    pub fn add(&self, p: &CurvePoint, q: &CurvePoint) -> Result<CurvePoint, TateError> {
        let (x1, y1, x2, y2) = match (p, q) {
            (CurvePoint::Infinity, _) => return Ok(q.clone()),
            (_, CurvePoint::Infinity) => return Ok(p.clone()),
            (CurvePoint::Affine { x: x1, y: y1 }, CurvePoint::Affine { x: x2, y: y2 }) => (x1, y1, x2, y2),
        };
        let lambda = if x1.approx_eq(x2) {
            if (&(y1 + y2) + x2).is_zero() {
                return Ok(CurvePoint::Infinity);
            }
            let three = PAdicElement::from_int(x1.field(), 3);
            let two = PAdicElement::from_int(x1.field(), 2);
            let num = &(&(&three * &(x1 * x1)) + &self.a4) - y1;
            let den = &(&two * y1) + x1;
            num.try_div(&den)?
        } else {
            (y2 - y1).try_div(&(x2 - x1))?
        };
        let nu = y1 - &(&lambda * x1);
        let x3 = &(&(&lambda * &lambda) + &lambda) - &(x1 + x2);
        let y3 = -&(&(&(&lambda + &PAdicElement::one(x1.field())) * &x3) + &nu);
        Ok(CurvePoint::Affine { x: x3, y: y3 })
    }
}

/// Sum of `m·Σ_{k=k0}^{∞} q^{km}` as a truncated geometric series, capped at its tail bound.
fn weighted_geometric(curve: &TateCurve, weight: i64, m: i64, k0: i64) -> PAdicElement {
    let field = curve.field();
    let target = field.precision() as i64;
    let step = m * curve.period();
    let k_max = ((target + step - 1) / step).max(k0);
    let qm = curve.q().pow(m).expect("q is nonzero");
    let mut term = qm.pow(k0).expect("q is nonzero");
    let mut acc = PAdicElement::zero(field);
    for _ in k0..=k_max {
        acc = &acc + &term;
        term = &term * &qm;
    }
    let w = PAdicElement::from_int(field, weight);
    (&acc * &w).cap_abs((k_max + 1) * step)
}

impl TateCurve {
    pub fn weierstrass(&self) -> WeierstrassCurve {
        let (a4, a6) = self.curve_coefficients();
        WeierstrassCurve { a4, a6 }
    }

    /// `X(u)` and `Y(u)` on `[lo, hi]`, expanded in the annulus `|q| < |u| < 1`.
    pub fn xy_series_on(&self, lo: i64, hi: i64) -> (LaurentSeries, LaurentSeries) {
        let field = self.field();
        let s1 = self.s1();
        let two = PAdicElement::from_int(field, 2);
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for m in lo..=hi {
            let (x, y) = match m.signum() {
                0 => (-&(&two * &s1), s1.clone()),
                1 => (
                    weighted_geometric(self, m, m, 0),
                    if m >= 2 { weighted_geometric(self, m * (m - 1) / 2, m, 0) } else { PAdicElement::zero(field) },
                ),
                _ => {
                    let k = -m;
                    (weighted_geometric(self, k, k, 1), weighted_geometric(self, -k * (k + 1) / 2, k, 1))
                }
            };
            xs.push(x);
            ys.push(y);
        }
        let below = if lo <= 0 { self.period() * (1 - lo) } else { 0 };
        let below = below.min(INFINITE);
        (
            LaurentSeries::new(field, lo, xs, below, 0),
            LaurentSeries::new(field, lo, ys, below, 0),
        )
    }

    /// `X(u)`, `Y(u)` on `[−window, window]`.
    pub fn xy_series(&self, window: i64) -> (LaurentSeries, LaurentSeries) {
        self.xy_series_on(-window, window)
    }

    /// `Y² + XY − X³ − a₄X − a₆` on `[−window, window]`, computed on a window
    /// widened until every coefficient there is certified to working precision.
    pub fn weierstrass_residual(&self, window: i64) -> LaurentSeries {
        let target = self.field().precision() as i64;
        let widen = (target + self.period() - 1) / self.period() + 1;
        let (x, y) = self.xy_series_on(-window - widen, window + 2 * widen);
        let w = self.weierstrass();
        let x2 = x.mul(&x);
        let lhs = y.mul(&y).add(&x.mul(&y));
        let rhs = x2.mul(&x).add(&x.scale(&w.a4)).add(&LaurentSeries::constant(&w.a6));
        lhs.sub(&rhs).clip(-window, window)
    }

    /// The point of `E(K)` attached to `u₀ ∈ K*`.
    pub fn point_eval(&self, u0: &PAdicElement) -> Result<CurvePoint, TateError> {
        if self.in_lattice(u0)? {
            return Ok(CurvePoint::Infinity);
        }
        let field = self.field();
        let (_, u1) = self.reduce_to_annulus(u0)?;
        let s = u1.ord()?;
        let one = PAdicElement::one(field);
        let near = if s == 0 { (&one - &u1).ord()? } else { 0 };
        let target = field.precision() as i64;
        let v = self.period();
        let k_max = (target + 3 * near + 2 * v + s) / v;
        let mut x = PAdicElement::zero(field);
        let mut y = PAdicElement::zero(field);
        let qinv = self.q().inverse()?;
        let mut w_pos = u1.clone();
        let mut w_neg = &u1 * &qinv;
        for n in 0..=k_max {
            let mut ws = vec![w_pos.clone()];
            if n >= 1 {
                ws.push(w_neg.clone());
                w_neg = &w_neg * &qinv;
            }
            for w in ws {
                let d = (&one - &w).inverse()?;
                let d2 = &d * &d;
                x = &x + &(&w * &d2);
                y = &y + &(&(&w * &w) * &(&d2 * &d));
            }
            w_pos = &w_pos * self.q();
        }
        let s1 = self.s1();
        let two = PAdicElement::from_int(field, 2);
        let tail = (k_max + 1) * v - s;
        let x = (&x - &(&two * &s1)).cap_abs(tail);
        let y = (&y + &s1).cap_abs(tail);
        Ok(CurvePoint::Affine { x, y })
    }
}
