//! Roots of unity in `K` and Hensel-style root search for integral polynomials.

use super::field::FieldSpec;
use super::poly_fp::distinct_prime_factors;
use super::{PAdicElement, PAdicError};

/// The group `μ_n ⊂ K*`.
#[derive(Clone, Debug)]
pub struct RootsOfUnity {
    /// `n = #μ(K)`.
    pub order: u64,
    /// Prime-to-p part, `q_res − 1`.
    pub tame_order: u64,
    /// p-power part.
    pub wild_order: u64,
    /// A generator of `μ_n`.
    pub generator: PAdicElement,
    /// `generator^k` for `k = 0..n`.
    pub elements: Vec<PAdicElement>,
}

/// All nonzero residue-field elements as digit vectors.
pub fn residue_elements(field: &FieldSpec) -> Vec<Vec<u64>> {
    let p = field.p();
    let f = field.f();
    let q = field.residue_size();
    (1..q)
        .map(|mut k| {
            let mut d = vec![0u64; f];
            for slot in d.iter_mut() {
                *slot = k % p;
                k /= p;
            }
            d
        })
        .collect()
}

fn all_residues(field: &FieldSpec) -> Vec<Vec<u64>> {
    let mut v = vec![vec![0u64; field.f()]];
    v.extend(residue_elements(field));
    v
}

/// Teichmüller lift of a generator of `F_q*`.
pub fn teichmuller_generator(field: &FieldSpec) -> PAdicElement {
    let q1 = field.residue_size() - 1;
    let one = PAdicElement::one(field);
    let primes = distinct_prime_factors(q1);
    for digits in residue_elements(field) {
        let w = PAdicElement::from_residue(field, &digits).teichmuller().unwrap();
        let generates = primes
            .iter()
            .all(|l| !w.pow((q1 / l) as i64).unwrap().approx_eq(&one));
        if generates {
            return w;
        }
    }
    one
}

pub(crate) fn eval_poly(coeffs: &[PAdicElement], x: &PAdicElement) -> PAdicElement {
    let mut acc = PAdicElement::zero(x.field());
    for c in coeffs.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

fn derivative(coeffs: &[PAdicElement]) -> Vec<PAdicElement> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * &PAdicElement::from_int(c.field(), i as i64))
        .collect()
}

fn newton(coeffs: &[PAdicElement], deriv: &[PAdicElement], mut x: PAdicElement) -> Option<PAdicElement> {
    for _ in 0..200 {
        let v = eval_poly(coeffs, &x);
        if v.is_zero() {
            return Some(x);
        }
        let d = eval_poly(deriv, &x);
        let step = v.try_div(&d).ok()?;
        let next = &x - &step;
        if next.approx_eq(&x) {
            return Some(next);
        }
        x = next;
    }
    Some(x)
}

/// Integral roots of a polynomial with simple roots, found by depth-first
/// digit extension with pruning and a Hensel/Newton finish.
///
/// `start` restricts the residue of the roots; `None` tries all residues.
pub fn integral_roots(coeffs: &[PAdicElement], start: Option<&[Vec<u64>]>) -> Vec<PAdicElement> {
    let Some(first) = coeffs.first() else {
        return Vec::new();
    };
    let field = first.field().clone();
    let deriv = derivative(coeffs);
    let pi = PAdicElement::uniformizer(&field);
    let residues = all_residues(&field);
    let max_depth = field.precision() as i64;
    let mut roots: Vec<PAdicElement> = Vec::new();
    let mut stack: Vec<(PAdicElement, i64)> = match start {
        Some(s) => s.iter().map(|d| (PAdicElement::from_residue(&field, d), 0)).collect(),
        None => residues.iter().map(|d| (PAdicElement::from_residue(&field, d), 0)).collect(),
    };
    let mut budget = 200_000usize;
    while let Some((x, depth)) = stack.pop() {
        if budget == 0 {
            break;
        }
        budget -= 1;
        let v = eval_poly(coeffs, &x);
        let candidate = if v.is_zero() {
            Some(x.clone())
        } else {
            let vp = v.ord_bound();
            let vd = eval_poly(&deriv, &x).ord_bound();
            if vd < super::INFINITE && vp > 2 * vd {
                newton(coeffs, &deriv, x.clone())
            } else if vp < depth + 1 || depth >= max_depth {
                continue;
            } else {
                None
            }
        };
        match candidate {
            Some(r) => {
                if !roots.iter().any(|s| s.approx_eq(&r)) {
                    roots.push(r);
                }
            }
            None => {
                let step = pi.pow(depth + 1).unwrap();
                for d in residues.iter().rev() {
                    let child = &x + &(&PAdicElement::from_residue(&field, d) * &step);
                    stack.push((child, depth + 1));
                }
            }
        }
    }
    roots
}

/// `Φ_{p^k}` with integer coefficients, low to high.
fn prime_power_cyclotomic(field: &FieldSpec, k: u32) -> Vec<PAdicElement> {
    let p = field.p() as usize;
    let step = p.pow(k - 1);
    let mut coeffs = vec![PAdicElement::zero(field); step * (p - 1) + 1];
    for i in 0..p {
        coeffs[i * step] = PAdicElement::one(field);
    }
    coeffs
}

/// `μ(K)`: Teichmüller lifts times any detected p-power roots of unity.
pub fn roots_of_unity(field: &FieldSpec) -> RootsOfUnity {
    let p = field.p();
    let e = field.e() as u64;
    let tame_order = field.residue_size() - 1;
    let tame_gen = teichmuller_generator(field);
    let one_residue = {
        let mut d = vec![0u64; field.f()];
        d[0] = 1;
        d
    };
    let mut wild_order = 1u64;
    let mut wild_gen = PAdicElement::one(field);
    let mut k = 1u32;
    loop {
        let phi = (p - 1) * p.pow(k - 1);
        if e % phi != 0 {
            break;
        }
        let roots = integral_roots(&prime_power_cyclotomic(field, k), Some(&[one_residue.clone()]));
        match roots.into_iter().next() {
            Some(z) => {
                wild_order *= p;
                wild_gen = z;
                k += 1;
            }
            None => break,
        }
    }
    let generator = &tame_gen * &wild_gen;
    let order = tame_order * wild_order;
    let mut elements = Vec::with_capacity(order as usize);
    let mut cur = PAdicElement::one(field);
    for _ in 0..order {
        elements.push(cur.clone());
        cur = &cur * &generator;
    }
    RootsOfUnity { order, tame_order, wild_order, generator, elements }
}

/// Multiplicative order of a root of unity dividing `n`.
pub fn root_order(z: &PAdicElement, n: u64) -> Result<u64, PAdicError> {
    let one = PAdicElement::one(z.field());
    let mut divisors: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
    divisors.sort_unstable();
    for d in divisors {
        if z.pow(d as i64)?.approx_eq(&one) {
            return Ok(d);
        }
    }
    Err(PAdicError::InvalidArgument("not a root of unity of the given order".into()))
}
