//! Tame Hilbert symbol, the torsion shape of `K₁` of a Tate curve, and
//! the `p^ν`-th power test.

use super::roots::{integral_roots, root_order, roots_of_unity, teichmuller_generator};
use super::{FieldSpec, PAdicElement, PAdicError};

/// `(a, b)_n = ω((−1)^{v(a)v(b)} a^{v(b)} b^{−v(a)})^{(q−1)/n}` for `n | q − 1`.
pub fn hilbert_symbol_tame(
    a: &PAdicElement,
    b: &PAdicElement,
    n: u64,
) -> Result<PAdicElement, PAdicError> {
    let field = a.field();
    let q1 = field.residue_size() - 1;
    if n == 0 || q1 % n != 0 {
        return Err(PAdicError::WildSymbol { n, residue_size: field.residue_size() });
    }
    let va = a.ord()?;
    let vb = b.ord()?;
    let mut t = &a.pow(vb)? * &b.pow(-va)?;
    if (va * vb).rem_euclid(2) == 1 {
        t = -t;
    }
    t.teichmuller()?.pow((q1 / n) as i64)
}

/// Orders of `μ_n ⊕ μ_n ⊕ μ_n/(q, K*)_n`, with the symbol table behind it.
#[derive(Clone, Debug)]
pub struct TorsionShape {
    pub n: u64,
    pub image_order: u64,
    pub orders: Vec<u64>,
    /// `(label, (q, g)_n)` for each generator `g` of `K*/n` used.
    pub symbols: Vec<(String, PAdicElement)>,
}

fn lcm(a: u64, b: u64) -> u64 {
    a / num_integer::gcd(a, b) * b
}

pub fn torsion_of_k1(field: &FieldSpec, q: &PAdicElement) -> Result<TorsionShape, PAdicError> {
    if q.ord()? <= 0 {
        return Err(PAdicError::InvalidArgument("ord(q) must be positive".into()));
    }
    let mu = roots_of_unity(field);
    let n = mu.order;
    if n % field.p() == 0 {
        return Err(PAdicError::WildSymbol { n, residue_size: field.residue_size() });
    }
    let mut generators = vec![
        ("uniformizer".to_string(), PAdicElement::uniformizer(field)),
        ("teichmuller".to_string(), teichmuller_generator(field)),
    ];
    let e = field.e() as u64;
    let p = field.p();
    let top = (e * p).div_ceil(p - 1);
    let pi = PAdicElement::uniformizer(field);
    let y = PAdicElement::base_generator(field);
    for i in 1..=top {
        for j in 0..field.f() {
            let g = &PAdicElement::one(field) + &(&y.pow(j as i64)? * &pi.pow(i as i64)?);
            generators.push((format!("1+y^{j}π^{i}"), g));
        }
    }
    let mut image_order = 1;
    let mut symbols = Vec::new();
    for (label, g) in generators {
        let s = hilbert_symbol_tame(q, &g, n)?;
        image_order = lcm(image_order, root_order(&s, n)?);
        symbols.push((label, s));
    }
    Ok(TorsionShape { n, image_order, orders: vec![n, n, n / image_order], symbols })
}

/// Result of testing `x ∈ (K*)^{p^ν}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerTest {
    pub is_power: bool,
    /// `ord(x₁ − 1)` for the principal-unit part `x₁`, capped by its precision.
    pub principal_ord: i64,
    /// `1 + νe`, the exact threshold when `e < p − 1`.
    pub threshold: i64,
}

/// Decides whether `x` is a `p^ν`-th power in `K*`.
pub fn p_power_test(x: &PAdicElement, nu: u32) -> Result<PowerTest, PAdicError> {
    let field = x.field();
    let p = field.p();
    let e = field.e() as i64;
    let v = x.ord()?;
    let threshold = 1 + nu as i64 * e;
    let unit = x.unit_part()?;
    let principal = unit.try_div(&unit.teichmuller()?)?;
    let one = PAdicElement::one(field);
    let diff = &principal - &one;
    let principal_ord = diff.ord_bound().min(principal.abs_precision());
    if nu == 0 {
        return Ok(PowerTest { is_power: true, principal_ord, threshold });
    }
    let pnu = (p as i64).pow(nu);
    if v % pnu != 0 {
        return Ok(PowerTest { is_power: false, principal_ord, threshold });
    }
    if (e as u64) < p - 1 {
        if principal.abs_precision() < threshold {
            return Err(PAdicError::PrecisionExhausted { available: principal.abs_precision() });
        }
        return Ok(PowerTest { is_power: principal_ord >= threshold, principal_ord, threshold });
    }
    // Binomial-series certificate, else explicit p-th root search.
    let sufficient = nu as i64 * e + (e as u64).div_ceil(p - 1) as i64 + 1;
    if principal_ord >= sufficient {
        return Ok(PowerTest { is_power: true, principal_ord, threshold });
    }
    let is_power = iterated_pth_root_exists(&principal, nu)?;
    Ok(PowerTest { is_power, principal_ord, threshold })
}

fn iterated_pth_root_exists(x: &PAdicElement, nu: u32) -> Result<bool, PAdicError> {
    if nu == 0 {
        return Ok(true);
    }
    let field = x.field();
    let p = field.p() as usize;
    let mut coeffs = vec![PAdicElement::zero(field); p + 1];
    coeffs[0] = -x;
    coeffs[p] = PAdicElement::one(field);
    let mut one = vec![0u64; field.f()];
    one[0] = 1;
    for r in integral_roots(&coeffs, Some(&[one])) {
        if iterated_pth_root_exists(&r, nu - 1)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// `a ≡ b mod (K*)^{p^ν}`.
pub fn congruent_mod_powers(a: &PAdicElement, b: &PAdicElement, nu: u32) -> Result<bool, PAdicError> {
    Ok(p_power_test(&a.try_div(b)?, nu)?.is_power)
}
