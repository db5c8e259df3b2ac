//! Polynomial arithmetic over GF(p), enough to validate irreducibility and
//! run quotient-ring multiplication. Coefficients are stored constant-first.

/// Reduces coefficients mod p, scales by the inverse of the leading
/// coefficient, and trims trailing zeros. Input leading coefficient must be
/// nonzero mod p.
pub(crate) fn make_monic(p: u64, coeffs: &[u64]) -> Vec<u64> {
    let mut c: Vec<u64> = coeffs.iter().map(|&x| x % p).collect();
    while c.len() > 1 && *c.last().unwrap() == 0 {
        c.pop();
    }
    let lead = *c.last().unwrap();
    debug_assert_ne!(lead, 0);
    if lead != 1 {
        let inv = mod_inv(lead, p);
        for x in &mut c {
            *x = *x * inv % p;
        }
    }
    c
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // p is prime and a nonzero mod p; Fermat is fine at these sizes.
    mod_pow(a % p, p - 2, p)
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

fn degree(poly: &[u64]) -> usize {
    let mut d = poly.len();
    while d > 1 && poly[d - 1] == 0 {
        d -= 1;
    }
    d - 1
}

/// Remainder of `a` modulo monic `m` over GF(p).
pub(crate) fn poly_rem(p: u64, a: &[u64], m: &[u64]) -> Vec<u64> {
    let dm = degree(m);
    let mut r: Vec<u64> = a.iter().map(|&x| x % p).collect();
    while degree(&r) >= dm && !(degree(&r) == 0 && r[0] == 0) {
        let dr = degree(&r);
        if dr < dm {
            break;
        }
        let factor = r[dr];
        if factor != 0 {
            let shift = dr - dm;
            for i in 0..=dm {
                let sub = factor * m[i] % p;
                r[i + shift] = (r[i + shift] + p - sub) % p;
            }
        }
        // Leading term is now zero; trim.
        while r.len() > 1 && *r.last().unwrap() == 0 {
            r.pop();
        }
        if degree(&r) < dm {
            break;
        }
    }
    r
}

/// Product of `a` and `b` reduced modulo monic `m` over GF(p).
pub(crate) fn poly_mul_mod(p: u64, a: &[u64], b: &[u64], m: &[u64]) -> Vec<u64> {
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai * bj) % p;
        }
    }
    poly_rem(p, &prod, m)
}

/// Irreducibility of a monic polynomial over GF(p) by trial division: no
/// monic divisor of degree between 1 and deg/2.
pub(crate) fn is_irreducible(p: u64, monic: &[u64]) -> bool {
    let deg = degree(monic);
    if deg == 0 {
        return false;
    }
    if deg == 1 {
        return true;
    }
    for d in 1..=deg / 2 {
        // All monic polynomials of degree d, enumerated by base-p digits.
        let count = p.pow(d as u32);
        for idx in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut rest = idx;
            for _ in 0..d {
                g.push(rest % p);
                rest /= p;
            }
            g.push(1);
            let r = poly_rem(p, monic, &g);
            if degree(&r) == 0 && r[0] == 0 {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn x2_plus_1_irreducible_mod_3() {
        assert!(is_irreducible(3, &[1, 0, 1]));
    }

    #[test]
    fn x2_plus_2_reducible_mod_3() {
        // (x+1)(x+2) = x² + 3x + 2 ≡ x² + 2.
        assert!(!is_irreducible(3, &[2, 0, 1]));
    }

    #[test]
    fn x3_x_1_irreducible_mod_2() {
        assert!(is_irreducible(2, &[1, 1, 0, 1]));
        // x³ + x² + x + 1 = (x+1)(x²+1) over GF(2).
        assert!(!is_irreducible(2, &[1, 1, 1, 1]));
    }

    #[test]
    fn rem_small_case() {
        // (x² + 1) mod (x + 1) over GF(3): substituting x = -1 gives 2.
        let r = poly_rem(3, &[1, 0, 1], &[1, 1]);
        assert_eq!(r, vec![2]);
    }

    #[test]
    fn mul_mod_wraps() {
        // x · x mod (x² + 1) over GF(3) = -1 = 2.
        let m = [1, 0, 1];
        let r = poly_mul_mod(3, &[0, 1], &[0, 1], &m);
        assert_eq!(r, vec![2]);
    }
}
