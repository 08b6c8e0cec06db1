//! Dense polynomials over a prime field F_p, used for irreducibility testing.

type Poly = Vec<u64>;

fn trim(mut a: Poly) -> Poly {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
    a
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn is_zero(a: &Poly) -> bool {
    a.iter().all(|&c| c == 0)
}

fn rem(a: &Poly, m: &Poly, p: u64) -> Poly {
    let m = trim(m.clone());
    let dm = m.len() - 1;
    if dm == 0 {
        return vec![0];
    }
    let mut a = trim(a.iter().map(|c| c % p).collect());
    let lead_inv = inv_mod(m[dm], p);
    while a.len() > dm {
        let da = a.len() - 1;
        let c = mulmod(a[da], lead_inv, p);
        if c != 0 {
            for i in 0..=dm {
                let sub = mulmod(c, m[i], p);
                a[da - dm + i] = (a[da - dm + i] + p - sub) % p;
            }
        }
        a.pop();
        if a.is_empty() {
            return vec![0];
        }
    }
    trim(a)
}

fn mul(a: &Poly, b: &Poly, p: u64) -> Poly {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(x, y, p)) % p;
        }
    }
    trim(out)
}

fn mulmod_poly(a: &Poly, b: &Poly, m: &Poly, p: u64) -> Poly {
    rem(&mul(a, b, p), m, p)
}

fn gcd(a: &Poly, b: &Poly, p: u64) -> Poly {
    let mut a = trim(a.clone());
    let mut b = trim(b.clone());
    while !is_zero(&b) {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// `x^(p^k) mod m`.
fn frobenius_power(m: &Poly, k: u32, p: u64) -> Poly {
    let mut x = rem(&vec![0, 1], m, p);
    for _ in 0..k {
        let mut acc = vec![1u64];
        let mut base = x.clone();
        let mut exp = p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mulmod_poly(&acc, &base, m, p);
            }
            base = mulmod_poly(&base, &base, m, p);
            exp >>= 1;
        }
        x = acc;
    }
    x
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's irreducibility test for a monic polynomial (coefficients low to high, reduced mod p).
pub(crate) fn is_irreducible(g: &[u64], p: u64) -> bool {
    let g = trim(g.iter().map(|c| c % p).collect());
    let deg = g.len() - 1;
    if deg == 0 {
        return false;
    }
    if deg == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    let sub_x = |h: Poly| -> Poly {
        let mut h = h;
        if h.len() < 2 {
            h.resize(2, 0);
        }
        h[1] = (h[1] + p - 1) % p;
        trim(h)
    };
    let full = frobenius_power(&g, deg as u32, p);
    if trim(full) != rem(&x, &g, p) {
        return false;
    }
    for l in prime_factors(deg as u64) {
        let h = sub_x(frobenius_power(&g, (deg as u64 / l) as u32, p));
        let d = gcd(&g, &h, p);
        if d.len() > 1 {
            return false;
        }
    }
    true
}

pub(crate) fn distinct_prime_factors(n: u64) -> Vec<u64> {
    prime_factors(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_irreducibility() {
        assert!(is_irreducible(&[1, 0, 1], 3));
        assert!(!is_irreducible(&[1, 0, 1], 5));
        assert!(is_irreducible(&[2, 0, 1], 5));
        assert!(is_irreducible(&[1, 1, 1], 2));
        assert!(!is_irreducible(&[1, 0, 1], 2));
        assert!(is_irreducible(&[1, 1, 0, 1], 2));
    }
}
