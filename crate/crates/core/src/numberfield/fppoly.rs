//! Polynomial arithmetic and deterministic factorization over `F_p`.
//!
//! Factorization is squarefree decomposition (with the char-p p-th-power
//! branch) followed by trial division by monic polynomials of increasing
//! degree. Deterministic and exact; intended for the small primes of the
//! desk-scale corpus, with a hard enumeration cap.

use crate::error::{Error, Result};

/// Coefficients mod p, constant term first, normalized (no leading
/// zeros; the zero polynomial is `[0]`).
pub type FpPoly = Vec<u64>;

pub fn normalize(mut f: FpPoly, p: u64) -> FpPoly {
    for c in f.iter_mut() {
        *c %= p;
    }
    while f.len() > 1 && *f.last().unwrap() == 0 {
        f.pop();
    }
    if f.is_empty() {
        f.push(0);
    }
    f
}

pub fn deg(f: &FpPoly) -> usize {
    f.len() - 1
}

pub fn is_zero(f: &FpPoly) -> bool {
    f.iter().all(|&c| c == 0)
}

pub fn is_one(f: &FpPoly) -> bool {
    f.len() == 1 && f[0] == 1
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat; p is prime
    let mut r = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    r
}

pub fn add(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for (i, &c) in a.iter().enumerate() {
        out[i] = (out[i] + c) % p;
    }
    for (i, &c) in b.iter().enumerate() {
        out[i] = (out[i] + c) % p;
    }
    normalize(out, p)
}

pub fn sub(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for (i, &c) in a.iter().enumerate() {
        out[i] = (out[i] + c) % p;
    }
    for (i, &c) in b.iter().enumerate() {
        out[i] = (out[i] + p - (c % p)) % p;
    }
    normalize(out, p)
}

pub fn mul(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    if is_zero(a) || is_zero(b) {
        return vec![0];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    normalize(out, p)
}

pub fn divmod(a: &FpPoly, b: &FpPoly, p: u64) -> (FpPoly, FpPoly) {
    assert!(!is_zero(b), "division by zero polynomial");
    let mut rem = normalize(a.clone(), p);
    let db = deg(b);
    if deg(&rem) < db || is_zero(&rem) {
        return (vec![0], rem);
    }
    let lead_inv = inv_mod(b[db], p);
    let mut quo = vec![0u64; deg(&rem) - db + 1];
    while !is_zero(&rem) && deg(&rem) >= db {
        let da = deg(&rem);
        let c = mul_mod(rem[da], lead_inv, p);
        quo[da - db] = c;
        for i in 0..=db {
            let t = mul_mod(c, b[i], p);
            rem[da - db + i] = (rem[da - db + i] + p - t) % p;
        }
        rem = normalize(rem, p);
        if da == 0 {
            break;
        }
    }
    (normalize(quo, p), rem)
}

pub fn divides(b: &FpPoly, a: &FpPoly, p: u64) -> bool {
    is_zero(&divmod(a, b, p).1)
}

pub fn monic(f: &FpPoly, p: u64) -> FpPoly {
    let f = normalize(f.clone(), p);
    let lead = f[deg(&f)];
    if lead == 1 || is_zero(&f) {
        return f;
    }
    let inv = inv_mod(lead, p);
    normalize(f.iter().map(|&c| mul_mod(c, inv, p)).collect(), p)
}

pub fn gcd(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    let mut x = normalize(a.clone(), p);
    let mut y = normalize(b.clone(), p);
    while !is_zero(&y) {
        let r = divmod(&x, &y, p).1;
        x = y;
        y = r;
    }
    if is_zero(&x) {
        x
    } else {
        monic(&x, p)
    }
}

/// Extended gcd: returns `(g, s, t)` with `s a + t b = g`, `g` monic.
pub fn extended_gcd(a: &FpPoly, b: &FpPoly, p: u64) -> (FpPoly, FpPoly, FpPoly) {
    let mut r0 = normalize(a.clone(), p);
    let mut r1 = normalize(b.clone(), p);
    let (mut s0, mut s1) = (vec![1u64], vec![0u64]);
    let (mut t0, mut t1) = (vec![0u64], vec![1u64]);
    while !is_zero(&r1) {
        let (q, r) = divmod(&r0, &r1, p);
        let ns = sub(&s0, &mul(&q, &s1, p), p);
        let nt = sub(&t0, &mul(&q, &t1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = ns;
        t0 = t1;
        t1 = nt;
    }
    if is_zero(&r0) {
        return (r0, s0, t0);
    }
    let lead = r0[deg(&r0)];
    let inv = inv_mod(lead, p);
    let scale = |f: &FpPoly| normalize(f.iter().map(|&c| mul_mod(c, inv, p)).collect(), p);
    (scale(&r0), scale(&s0), scale(&t0))
}

pub fn derivative(f: &FpPoly, p: u64) -> FpPoly {
    if f.len() <= 1 {
        return vec![0];
    }
    let out: FpPoly = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| mul_mod(i as u64 % p, c, p))
        .collect();
    normalize(out, p)
}

/// p-th root of a polynomial in `x^p` (Frobenius is the identity on
/// `F_p`).
fn pth_root(f: &FpPoly, p: u64) -> FpPoly {
    let mut out = Vec::new();
    for (i, &c) in f.iter().enumerate() {
        if (i as u64).is_multiple_of(p) {
            out.push(c);
        } else {
            assert_eq!(c, 0, "polynomial is not a p-th power");
        }
    }
    normalize(out, p)
}

/// Squarefree decomposition of a monic polynomial: pairs
/// `(squarefree monic factor, multiplicity)`.
pub fn squarefree_decomposition(f: &FpPoly, p: u64) -> Vec<(FpPoly, usize)> {
    let mut out = Vec::new();
    let mut f = monic(f, p);
    let mut e = 1usize;
    loop {
        if deg(&f) == 0 {
            break;
        }
        let fd = derivative(&f, p);
        if is_zero(&fd) {
            f = pth_root(&f, p);
            e *= p as usize;
            continue;
        }
        let mut g = gcd(&f, &fd, p);
        let mut w = divmod(&f, &g, p).0;
        let mut i = 1usize;
        while !is_one(&w) {
            let y = gcd(&w, &g, p);
            let z = divmod(&w, &y, p).0;
            if deg(&z) > 0 {
                out.push((z, i * e));
            }
            w = y;
            g = divmod(&g, &w, p).0;
            i += 1;
        }
        if deg(&g) == 0 {
            break;
        }
        f = pth_root(&g, p);
        e *= p as usize;
    }
    out
}

/// Deterministic factorization of a squarefree monic polynomial by trial
/// division in increasing degree.
fn factor_squarefree(h: &FpPoly, p: u64) -> Result<Vec<FpPoly>> {
    let mut h = monic(h, p);
    let mut out = Vec::new();
    let mut m = 1usize;
    while 2 * m <= deg(&h) {
        let count = (p as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
        if count > 2_000_000 {
            return Err(Error::ResourceLimit(format!(
                "deterministic factorization cap exceeded at p = {p}, degree {m}"
            )));
        }
        let mut counter = vec![0u64; m];
        loop {
            // candidate x^m + sum counter[i] x^i
            let mut cand: FpPoly = counter.clone();
            cand.push(1);
            let cand = normalize(cand, p);
            if divides(&cand, &h, p) {
                h = divmod(&h, &cand, p).0;
                out.push(cand);
                if 2 * m > deg(&h) {
                    break;
                }
            }
            // increment base-p counter
            let mut i = 0;
            loop {
                if i == m {
                    break;
                }
                counter[i] += 1;
                if counter[i] < p {
                    break;
                }
                counter[i] = 0;
                i += 1;
            }
            if i == m {
                break;
            }
        }
        m += 1;
    }
    if deg(&h) > 0 {
        out.push(h);
    }
    Ok(out)
}

/// Full factorization of a monic polynomial into monic irreducibles with
/// multiplicities, sorted by degree then coefficients.
pub fn factor(f: &FpPoly, p: u64) -> Result<Vec<(FpPoly, usize)>> {
    let mut out = Vec::new();
    for (sqf, mult) in squarefree_decomposition(f, p) {
        for irr in factor_squarefree(&sqf, p)? {
            out.push((irr, mult));
        }
    }
    out.sort_by(|a, b| (deg(&a.0), &a.0).cmp(&(deg(&b.0), &b.0)));
    Ok(out)
}

pub fn eval(f: &FpPoly, x: u64, p: u64) -> u64 {
    let mut acc = 0u64;
    for &c in f.iter().rev() {
        acc = (mul_mod(acc, x, p) + c) % p;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_polynomial_splitting() {
        // x^2 + 1 mod 5 = (x + 2)(x + 3)
        let f = vec![1, 0, 1];
        let fac = factor(&f, 5).unwrap();
        assert_eq!(fac, vec![(vec![2, 1], 1), (vec![3, 1], 1)]);
        // mod 3: irreducible
        let fac = factor(&f, 3).unwrap();
        assert_eq!(fac, vec![(vec![1, 0, 1], 1)]);
        // mod 2: (x + 1)^2
        let fac = factor(&f, 2).unwrap();
        assert_eq!(fac, vec![(vec![1, 1], 2)]);
    }

    #[test]
    fn wild_cube_mod_three() {
        // x^3 - 2 = (x + 1)^3 mod 3
        let f = vec![1, 0, 0, 1]; // x^3 + 1 = x^3 - 2 mod 3
        let fac = factor(&f, 3).unwrap();
        assert_eq!(fac, vec![(vec![1, 1], 3)]);
    }

    #[test]
    fn cyclotomic_twelve_drops_to_squares() {
        // x^4 - x^2 + 1 mod 2 = (x^2 + x + 1)^2
        let f = vec![1, 0, 1, 0, 1];
        let fac = factor(&f, 2).unwrap();
        assert_eq!(fac, vec![(vec![1, 1, 1], 2)]);
        // mod 3: (x^2 + 1)^2
        let f3 = vec![1, 0, 2, 0, 1];
        let fac = factor(&f3, 3).unwrap();
        assert_eq!(fac, vec![(vec![1, 0, 1], 2)]);
    }

    #[test]
    fn bezout_identity() {
        let p = 5;
        let a = vec![1, 1]; // x + 1
        let b = vec![2, 1]; // x + 2
        let (g, s, t) = extended_gcd(&a, &b, p);
        assert!(is_one(&g));
        let lhs = add(&mul(&s, &a, p), &mul(&t, &b, p), p);
        assert!(is_one(&lhs));
    }
}
