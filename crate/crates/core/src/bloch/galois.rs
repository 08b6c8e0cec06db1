//! Galois action on `β₁(ζ_mᵏ) = Σᵢ[ζ_lⁱζ_mᵏ]` and `β₂(ζ_mᵏ) = Σᵢ(i/l)[ζ_lⁱζ_mᵏ]`
//! in `Q(ζ_{lm})`, for a prime `l ≡ 3 mod 4` prime to `m`.

use num_integer::Integer;
use num_rational::BigRational;

use super::cyclotomic::{CyclotomicField, CyclotomicNumber};
use super::prebloch::PreBlochElement;
use super::BlochError;

/// One identity `g*β = ±β` at one `k`.
#[derive(Clone, Debug)]
pub struct GaloisIdentity {
    pub name: String,
    pub k: u64,
    pub exact: bool,
    /// Largest `|D₂(g*β) ∓ D₂(β)|` over all embeddings, with `g` applied on the embedding side.
    pub residual: f64,
}

/// The `τ` candidate `ζ_m ↦ ζ_m⁻¹`, `ζ_l ↦ ζ_l^{class}`.
#[derive(Clone, Debug)]
pub struct TauCandidate {
    /// `1` fixes `ζ_l` (a square class), `−1` is complex conjugation on `Q(ζ_l)`.
    pub class: i64,
    pub identities: Vec<GaloisIdentity>,
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub struct GaloisReport {
    pub l: u64,
    pub m: u64,
    pub conductor: u64,
    pub generator: u64,
    pub sigma: Vec<GaloisIdentity>,
    pub tau: Vec<TauCandidate>,
}

impl GaloisReport {
    /// The `τ` candidate satisfying every identity, if exactly one does.
    pub fn tau_action(&self) -> Option<i64> {
        let ok: Vec<_> = self.tau.iter().filter(|c| c.holds).collect();
        (ok.len() == 1).then(|| ok[0].class)
    }

    pub fn passed(&self, tolerance: f64) -> bool {
        let good = |v: &GaloisIdentity| v.exact && v.residual < tolerance;
        self.sigma.iter().all(good)
            && self.tau_action().is_some()
            && self.tau.iter().filter(|c| c.holds).all(|c| c.identities.iter().all(good))
    }
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn legendre(i: u64, l: u64) -> i64 {
    match pow_mod(i, (l - 1) / 2, l) {
        0 => 0,
        1 => 1,
        _ => -1,
    }
}

fn primitive_root(l: u64) -> u64 {
    (2..l).find(|&g| (1..l - 1).all(|e| pow_mod(g, e, l) != 1)).unwrap_or(1)
}

/// `s mod n` with `s ≡ a mod l` and `s ≡ b mod n/l`.
fn crt(a: i64, b: i64, l: u64, n: u64) -> i64 {
    let rest = (n / l) as i64;
    (0..n as i64).find(|s| (s - a).rem_euclid(l as i64) == 0 && (s - b).rem_euclid(rest) == 0).expect("coprime moduli")
}

fn beta(field: &std::sync::Arc<CyclotomicField>, l: u64, m: u64, k: u64, weighted: bool) -> Result<PreBlochElement, BlochError> {
    let n = field.conductor();
    let zl = (n / l) as i64;
    let zm = (n / m) as i64;
    let mut out = PreBlochElement::zero(field);
    for i in 1..l {
        let c = if weighted { legendre(i, l) } else { 1 };
        out.push(&CyclotomicNumber::zeta_power(field, i as i64 * zl + k as i64 * zm), c)?;
    }
    Ok(out)
}

fn identity(
    name: &str,
    k: u64,
    b: &PreBlochElement,
    s: i64,
    sign: i64,
) -> Result<GaloisIdentity, BlochError> {
    let image = b.galois(s)?;
    let exact = image == b.scale(&BigRational::from_integer(sign.into()));
    let n = b.field().conductor();
    let residual = b
        .field()
        .embeddings()
        .iter()
        .map(|&e| {
            let lhs = b.borel_value((e as i64 * s).rem_euclid(n as i64) as u64);
            (lhs - sign as f64 * b.borel_value(e)).abs()
        })
        .fold(0.0, f64::max);
    Ok(GaloisIdentity { name: name.into(), k, exact, residual })
}

/// Checks `σ*β₁ = β₁`, `σ*β₂ = −β₂` for `σ: ζ_l ↦ ζ_l^r` (`r` a generator), and
/// `τ*β₁ = −β₁`, `τ*β₂ = β₂` for both candidate restrictions of `τ` to `Q(ζ_l)`.
pub fn galois_beta_check(l: u64, m: u64) -> Result<GaloisReport, BlochError> {
    if !is_prime(l) || l % 4 != 3 || m < 2 || l.gcd(&m) != 1 {
        return Err(BlochError::InvalidParameters(format!("need prime l ≡ 3 mod 4, m ≥ 2, gcd(l, m) = 1; got ({l}, {m})")));
    }
    let field = CyclotomicField::get(l * m)?;
    let n = field.conductor();
    let r = primitive_root(l);
    let sigma_s = crt(r as i64, 1, l, n);
    let ks: Vec<u64> = (1..m).filter(|k| k.gcd(&m) == 1).collect();
    let mut sigma = Vec::new();
    let mut betas = Vec::new();
    for &k in &ks {
        let b1 = beta(&field, l, m, k, false)?;
        let b2 = beta(&field, l, m, k, true)?;
        sigma.push(identity("sigma*beta1 = beta1", k, &b1, sigma_s, 1)?);
        sigma.push(identity("sigma*beta2 = -beta2", k, &b2, sigma_s, -1)?);
        betas.push((k, b1, b2));
    }
    let mut tau = Vec::new();
    for class in [1i64, -1] {
        let s = crt(class, -1, l, n);
        let mut identities = Vec::new();
        for (k, b1, b2) in &betas {
            identities.push(identity("tau*beta1 = -beta1", *k, b1, s, -1)?);
            identities.push(identity("tau*beta2 = beta2", *k, b2, s, 1)?);
        }
        let holds = identities.iter().all(|i| i.exact);
        tau.push(TauCandidate { class, identities, holds });
    }
    Ok(GaloisReport { l, m, conductor: n, generator: r, sigma, tau })
}
