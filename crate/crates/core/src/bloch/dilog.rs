//! The Bloch–Wigner function `D₂(z) = Im Li₂(z) + arg(1 − z)·log|z|`.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// `B_{2k}/(2k+1)!` for `k = 1..`, enough terms for `|x| ≤ 2.5`.
fn bernoulli_weights() -> &'static [f64] {
    static W: OnceLock<Vec<f64>> = OnceLock::new();
    W.get_or_init(|| {
        const TERMS: usize = 40;
        // B_0..B_{2·TERMS} from Σ_{j<m} C(m+1, j) B_j = −(m+1) B_m.
        let n = 2 * TERMS + 1;
        let mut b: Vec<BigRational> = vec![BigRational::one()];
        for m in 1..=n {
            let mut s = BigRational::zero();
            let mut binom = BigInt::one();
            for (j, bj) in b.iter().enumerate() {
                s += bj * BigRational::from_integer(binom.clone());
                binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
            }
            b.push(-s / BigRational::from_integer(BigInt::from(m + 1)));
        }
        let mut fact = BigInt::one();
        let mut out = Vec::with_capacity(TERMS);
        for k in 1..=2 * TERMS + 1 {
            fact *= k;
            if k % 2 == 1 && k >= 3 {
                let w = &b[k - 1] / BigRational::from_integer(fact.clone());
                out.push(w.to_f64().unwrap_or(0.0));
            }
        }
        out
    })
}

/// `Li₂(w)` via `x = −log(1 − w)`: `x − x²/4 + Σ B_{2k} x^{2k+1}/(2k+1)!`.
fn li2_bernoulli(w: Complex64) -> Complex64 {
    let x = -(Complex64::new(1.0, 0.0) - w).ln();
    let x2 = x * x;
    let mut acc = x - x2 / 4.0;
    let mut pow = x;
    for &c in bernoulli_weights() {
        pow *= x2;
        let term = pow * c;
        acc += term;
        if term.norm() < 1e-18 * acc.norm().max(1e-300) {
            break;
        }
    }
    acc
}

fn d2_direct(w: Complex64) -> f64 {
    let one = Complex64::new(1.0, 0.0);
    li2_bernoulli(w).im + (one - w).arg() * w.norm().ln()
}

/// `D₂(z)`; `0` at `z ∈ {0, 1}`.
///
/// Evaluated at whichever of the six images `z, 1−1/z, 1/(1−z)` (sign `+`) and
/// `1/z, 1−z, z/(z−1)` (sign `−`) has the smallest `|log(1 − w)|`.
pub fn d2(z: Complex64) -> f64 {
    let one = Complex64::new(1.0, 0.0);
    if z.norm() == 0.0 || (z - one).norm() == 0.0 {
        return 0.0;
    }
    let images = [
        (z, 1.0),
        (one - one / z, 1.0),
        (one / (one - z), 1.0),
        (one / z, -1.0),
        (one - z, -1.0),
        (z / (z - one), -1.0),
    ];
    let (w, sign) = images
        .into_iter()
        .min_by(|a, b| {
            let la = (one - a.0).ln().norm();
            let lb = (one - b.0).ln().norm();
            la.total_cmp(&lb)
        })
        .expect("six images");
    sign * d2_direct(w)
}
