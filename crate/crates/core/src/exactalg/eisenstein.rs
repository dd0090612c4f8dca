//! Eisenstein data for totally ramified local extensions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A totally ramified extension of `Z_p`, truncated at precision `p^N`,
/// presented by the Eisenstein polynomial
///
/// ```text
/// f(x) = x^e - p*x*g(x) - u*p
/// ```
///
/// where `u` is a unit mod `p` and `deg g <= e - 2`. Every Eisenstein
/// polynomial has this shape, so the datum is fully general. The
/// extension is `A = Z_p[pi]/(f(pi))`, with uniformizer `pi` and
/// ramification index `e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EisensteinDatum {
    pub p: u64,
    /// Coefficient precision: scalars live in `Z/p^N`.
    pub precision: u32,
    /// Ramification degree `e >= 1`.
    pub degree: u32,
    /// Coefficients of `g`, constant term first, length `e - 1`
    /// (so `deg g <= e - 2`); empty when `e = 1`.
    pub g: Vec<BigInt>,
    /// The unit `u`, reduced mod `p^N`, invertible mod `p`.
    pub unit: BigInt,
}

impl EisensteinDatum {
    pub fn new(p: u64, precision: u32, degree: u32, g: Vec<BigInt>, unit: BigInt) -> Result<Self> {
        if !crate::exactalg::is_prime_u64(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        if precision == 0 || degree == 0 {
            return Err(Error::InvalidInput(
                "precision and degree must be positive".into(),
            ));
        }
        let max_g = degree.saturating_sub(1) as usize;
        if g.len() > max_g {
            return Err(Error::InvalidInput(format!(
                "g has degree > e - 2 (got {} coefficients for e = {degree})",
                g.len()
            )));
        }
        let modulus = BigInt::from(p).pow(precision);
        let mut g: Vec<BigInt> = g.into_iter().map(|c| c.mod_floor(&modulus)).collect();
        g.resize(max_g, BigInt::zero());
        let unit = unit.mod_floor(&modulus);
        if (&unit % BigInt::from(p)).is_zero() {
            return Err(Error::InvalidInput("u is not a unit mod p".into()));
        }
        Ok(EisensteinDatum {
            p,
            precision,
            degree,
            g,
            unit,
        })
    }

    /// The trivial datum with `e = 1`, i.e. `A = Z_p` itself (`f = x - p`).
    pub fn trivial(p: u64, precision: u32) -> Self {
        EisensteinDatum {
            p,
            precision,
            degree: 1,
            g: vec![],
            unit: BigInt::one(),
        }
    }

    pub fn modulus(&self) -> BigInt {
        BigInt::from(self.p).pow(self.precision)
    }

    pub fn e(&self) -> usize {
        self.degree as usize
    }

    /// Coefficients of `f(x) = x^e - p x g(x) - u p`, constant term first,
    /// length `e + 1`, reduced mod `p^N`.
    pub fn f_coeffs(&self) -> Vec<BigInt> {
        let e = self.e();
        let m = self.modulus();
        let p = BigInt::from(self.p);
        let mut f = vec![BigInt::zero(); e + 1];
        f[e] = BigInt::one();
        f[0] = (-(&self.unit * &p)).mod_floor(&m);
        for (i, gi) in self.g.iter().enumerate() {
            // the x^{i+1} coefficient of -p*x*g(x)
            f[i + 1] = (&f[i + 1] - &p * gi).mod_floor(&m);
        }
        f
    }

    /// Coefficients of `f'(x) = e x^{e-1} - p g(x) - p x g'(x)`, constant
    /// term first, length `e`, reduced mod `p^N`.
    pub fn f_prime_coeffs(&self) -> Vec<BigInt> {
        let e = self.e();
        let m = self.modulus();
        let mut d = vec![BigInt::zero(); e];
        let f = self.f_coeffs();
        for i in 1..=e {
            d[i - 1] = (BigInt::from(i as u64) * &f[i]).mod_floor(&m);
        }
        d
    }

    /// Re-reduce to a lower precision. Raising precision is impossible:
    /// the dropped digits are gone.
    pub fn with_precision(&self, precision: u32) -> Result<Self> {
        if precision > self.precision {
            return Err(Error::InvalidInput(format!(
                "cannot raise datum precision from {} to {precision}",
                self.precision
            )));
        }
        EisensteinDatum::new(
            self.p,
            precision,
            self.degree,
            self.g.clone(),
            self.unit.clone(),
        )
    }

    /// Build a datum from the coefficients of a monic polynomial known to
    /// be Eisenstein at `p` (constant term first, length `e + 1`). Errors
    /// with `NoEisensteinForm` when the shape fails.
    ///
    /// Coefficients are divided by `p` as the integers given, so they
    /// must be exact, or residues carried to at least one digit beyond
    /// `precision`; reducing first would corrupt the top digit.
    pub fn from_polynomial(p: u64, precision: u32, coeffs: &[BigInt]) -> Result<Self> {
        if coeffs.is_empty() || coeffs.last().map(|c| !c.is_one()).unwrap_or(true) {
            return Err(Error::NoEisensteinForm("polynomial is not monic".into()));
        }
        let e = coeffs.len() - 1;
        if e == 0 {
            return Err(Error::NoEisensteinForm("degree 0".into()));
        }
        let pb = BigInt::from(p);
        let modulus = BigInt::from(p).pow(precision);
        if !(&coeffs[0] % &pb).is_zero() {
            return Err(Error::NoEisensteinForm(
                "constant term not divisible by p".into(),
            ));
        }
        let c0_over_p: BigInt = &coeffs[0] / &pb;
        if (&c0_over_p % &pb).is_zero() {
            return Err(Error::NoEisensteinForm(
                "constant term divisible by p^2".into(),
            ));
        }
        let unit = (-c0_over_p).mod_floor(&modulus);
        let mut g = Vec::with_capacity(e.saturating_sub(1));
        for c in coeffs.iter().take(e).skip(1) {
            if !(c % &pb).is_zero() {
                return Err(Error::NoEisensteinForm(
                    "middle coefficient not divisible by p".into(),
                ));
            }
            g.push((-(c / &pb)).mod_floor(&modulus));
        }
        EisensteinDatum::new(p, precision, e as u32, g, unit)
    }

    /// Reduce uniformizer-power coefficients (constant first, any length)
    /// modulo `f` and `p^N`, using the relation `x^e = p x g(x) + u p`.
    pub fn reduce_mod_f(&self, raw: &[BigInt]) -> Vec<BigInt> {
        let e = self.e();
        let m = self.modulus();
        let p = BigInt::from(self.p);
        let mut c: Vec<BigInt> = raw.to_vec();
        if c.len() < e {
            c.resize(e, BigInt::zero());
        }
        let mut deg = c.len() - 1;
        while deg >= e {
            let top = std::mem::replace(&mut c[deg], BigInt::zero());
            if !top.is_zero() {
                // x^deg = x^{deg-e} (p x g(x) + u p)
                let base = deg - e;
                c[base] = (&c[base] + &top * &p * &self.unit).mod_floor(&m);
                for (j, gj) in self.g.iter().enumerate() {
                    if !gj.is_zero() {
                        c[base + 1 + j] = (&c[base + 1 + j] + &top * &p * gj).mod_floor(&m);
                    }
                }
            }
            deg -= 1;
        }
        c.truncate(e);
        for ci in c.iter_mut() {
            *ci = ci.mod_floor(&m);
        }
        c
    }

    /// Valuation of the constant term `|f(0)|` is exactly one; sanity view
    /// used by diagnostics.
    pub fn describe(&self) -> String {
        let mut s = format!("x^{}", self.degree);
        for (i, gi) in self.g.iter().enumerate().rev() {
            if !gi.is_zero() {
                let c = -(BigInt::from(self.p) * gi);
                let sign = if c.is_negative() { "-" } else { "+" };
                s.push_str(&format!(" {} {}*x^{}", sign, c.abs(), i + 1));
            }
        }
        s.push_str(&format!(" - {}", BigInt::from(self.p) * &self.unit));
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f_coeffs_round_trip() {
        // f = x^2 - 2 at p = 2: g = 0, u = 1
        let d = EisensteinDatum::new(2, 16, 2, vec![BigInt::zero()], BigInt::one()).unwrap();
        let f = d.f_coeffs();
        let m = d.modulus();
        assert_eq!(f[2], BigInt::one());
        assert_eq!(f[1], BigInt::zero());
        assert_eq!(f[0], (BigInt::from(-2)).mod_floor(&m));
        let back = EisensteinDatum::from_polynomial(2, 16, &[(-2).into(), 0.into(), 1.into()])
            .unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn from_polynomial_rejects_non_eisenstein() {
        // x^2 + 1 is not Eisenstein at 2
        let r = EisensteinDatum::from_polynomial(2, 8, &[1.into(), 0.into(), 1.into()]);
        assert!(r.is_err());
        // x^2 - 4: constant divisible by p^2
        let r = EisensteinDatum::from_polynomial(2, 8, &[(-4).into(), 0.into(), 1.into()]);
        assert!(r.is_err());
    }

    #[test]
    fn translated_gaussian_datum() {
        // (y+1)^2 + 1 = y^2 + 2y + 2 is the local shape of x^2+1 at 2
        let d = EisensteinDatum::from_polynomial(2, 16, &[2.into(), 2.into(), 1.into()]).unwrap();
        assert_eq!(d.degree, 2);
        // -p g_0 = 2 so g_0 = -1; -u p = 2 so u = -1
        let m = d.modulus();
        assert_eq!(d.g[0], BigInt::from(-1).mod_floor(&m));
        assert_eq!(d.unit, BigInt::from(-1).mod_floor(&m));
    }

    #[test]
    fn unit_must_be_invertible() {
        assert!(EisensteinDatum::new(2, 8, 2, vec![], BigInt::from(2)).is_err());
    }
}
