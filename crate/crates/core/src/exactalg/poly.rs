//! Integer polynomial utilities (coefficients constant-term first).

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::exactalg::matrix::Matrix;
use crate::exactalg::ring::GroundRing;

pub fn trim(c: &mut Vec<BigInt>) {
    while c.len() > 1 && c.last().map(BigInt::is_zero).unwrap_or(false) {
        c.pop();
    }
}

pub fn degree(c: &[BigInt]) -> usize {
    let mut d = c.len();
    while d > 1 && c[d - 1].is_zero() {
        d -= 1;
    }
    d - 1
}

pub fn is_zero(c: &[BigInt]) -> bool {
    c.iter().all(BigInt::is_zero)
}

pub fn add(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let mut out = vec![BigInt::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] += x;
    }
    trim(&mut out);
    out
}

pub fn sub(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let neg: Vec<BigInt> = b.iter().map(|x| -x).collect();
    add(a, &neg)
}

pub fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if is_zero(a) || is_zero(b) {
        return vec![BigInt::zero()];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

pub fn eval(c: &[BigInt], x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for ci in c.iter().rev() {
        acc = acc * x + ci;
    }
    acc
}

pub fn derivative(c: &[BigInt]) -> Vec<BigInt> {
    if c.len() <= 1 {
        return vec![BigInt::zero()];
    }
    let mut out: Vec<BigInt> = c
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, ci)| BigInt::from(i as u64) * ci)
        .collect();
    trim(&mut out);
    out
}

/// `f(g(x))` by Horner over polynomial arithmetic.
pub fn compose(f: &[BigInt], g: &[BigInt]) -> Vec<BigInt> {
    let mut acc = vec![BigInt::zero()];
    for c in f.iter().rev() {
        acc = mul(&acc, g);
        acc = add(&acc, std::slice::from_ref(c));
    }
    acc
}

/// Translate: coefficients of `f(x + t)`.
pub fn translate(f: &[BigInt], t: &BigInt) -> Vec<BigInt> {
    compose(f, &[t.clone(), BigInt::one()])
}

/// Division with remainder by a monic divisor.
pub fn divmod_monic(a: &[BigInt], b: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
    let db = degree(b);
    assert!(b[db].is_one(), "divisor must be monic");
    let mut rem: Vec<BigInt> = a.to_vec();
    trim(&mut rem);
    if degree(&rem) < db || is_zero(&rem) {
        return (vec![BigInt::zero()], rem);
    }
    let mut quo = vec![BigInt::zero(); degree(&rem) - db + 1];
    while !is_zero(&rem) && degree(&rem) >= db {
        let da = degree(&rem);
        let c = rem[da].clone();
        quo[da - db] = c.clone();
        for i in 0..=db {
            let v = &rem[da - db + i] - &c * &b[i];
            rem[da - db + i] = v;
        }
        trim(&mut rem);
        if rem.len() == 1 && rem[0].is_zero() {
            break;
        }
    }
    trim(&mut quo);
    (quo, rem)
}

/// Resultant of two integer polynomials by the Sylvester determinant.
pub fn resultant(f: &[BigInt], g: &[BigInt]) -> BigInt {
    let df = degree(f);
    let dg = degree(g);
    if is_zero(f) || is_zero(g) {
        return BigInt::zero();
    }
    if df == 0 {
        return f[0].pow(dg as u32);
    }
    if dg == 0 {
        return g[0].pow(df as u32);
    }
    let n = df + dg;
    let ring = GroundRing::Integers;
    let m = Matrix::from_fn(ring.clone(), n, n, |i, j| {
        // first dg rows carry shifted copies of f, then df rows of g
        let c = if i < dg {
            let k = df as i64 - (j as i64 - i as i64);
            if (0..=df as i64).contains(&k) {
                f[k as usize].clone()
            } else {
                BigInt::zero()
            }
        } else {
            let r = i - dg;
            let k = dg as i64 - (j as i64 - r as i64);
            if (0..=dg as i64).contains(&k) {
                g[k as usize].clone()
            } else {
                BigInt::zero()
            }
        };
        ring.from_bigint(c)
    });
    m.determinant()
}

/// Discriminant of a monic polynomial.
pub fn discriminant_monic(f: &[BigInt]) -> BigInt {
    let d = degree(f);
    assert!(f[d].is_one(), "monic expected");
    if d == 0 {
        return BigInt::one();
    }
    let res = resultant(f, &derivative(f));
    let sign = if (d * (d - 1) / 2).is_multiple_of(2) { 1 } else { -1 };
    BigInt::from(sign) * res
}

pub fn pretty(c: &[BigInt], var: &str) -> String {
    let mut terms = Vec::new();
    for (i, ci) in c.iter().enumerate().rev() {
        if ci.is_zero() {
            continue;
        }
        let coeff = ci.abs();
        let body = match i {
            0 => coeff.to_string(),
            1 if coeff.is_one() => var.to_string(),
            1 => format!("{coeff}*{var}"),
            _ if coeff.is_one() => format!("{var}^{i}"),
            _ => format!("{coeff}*{var}^{i}"),
        };
        if terms.is_empty() {
            terms.push(if ci.is_negative() {
                format!("-{body}")
            } else {
                body
            });
        } else {
            terms.push(format!("{} {}", if ci.is_negative() { "-" } else { "+" }, body));
        }
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn resultant_linear_pair() {
        // Res(x - a, x - b) = a - b up to sign convention: det [[-a? ...]]
        let r = resultant(&p(&[-3, 1]), &p(&[-5, 1]));
        assert_eq!(r.abs(), BigInt::from(2));
    }

    #[test]
    fn discriminants_of_corpus_polynomials() {
        assert_eq!(discriminant_monic(&p(&[1, 0, 1])).abs(), BigInt::from(4)); // x^2+1
        assert_eq!(discriminant_monic(&p(&[-2, 0, 1])).abs(), BigInt::from(8)); // x^2-2
        assert_eq!(discriminant_monic(&p(&[1, 1, 1])).abs(), BigInt::from(3)); // x^2+x+1
        assert_eq!(
            discriminant_monic(&p(&[-2, 0, 0, 1])).abs(),
            BigInt::from(108)
        ); // x^3-2
        assert_eq!(
            discriminant_monic(&p(&[-2, 0, 0, 0, 1])).abs(),
            BigInt::from(2048)
        ); // x^4-2
        assert_eq!(
            discriminant_monic(&p(&[1, 0, -1, 0, 1])).abs(),
            BigInt::from(144)
        ); // x^4-x^2+1
        assert_eq!(discriminant_monic(&p(&[0, 1])).abs(), BigInt::one()); // x
    }

    #[test]
    fn translate_shifts_roots() {
        // f = x^2 + 1, f(y+1) = y^2 + 2y + 2
        assert_eq!(translate(&p(&[1, 0, 1]), &BigInt::one()), p(&[2, 2, 1]));
    }

    #[test]
    fn divmod_by_monic() {
        // x^3 - 2 = (x - 1)(x^2 + x + 1) - 1
        let (q, r) = divmod_monic(&p(&[-2, 0, 0, 1]), &p(&[-1, 1]));
        assert_eq!(q, p(&[1, 1, 1]));
        assert_eq!(r, p(&[-1]));
    }
}
