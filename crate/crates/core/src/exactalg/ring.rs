//! Ground rings and their scalar arithmetic.
//!
//! Four ground rings cover everything in this crate: the integers, prime
//! fields, `Z/p^N` as a truncation of `Z_p`, and truncated totally
//! ramified extensions `A = Z_p[pi]/(f)` given by an Eisenstein datum.
//! All scalars are kept in canonical reduced form, so equality is
//! representation equality.
//!
//! Truncated rings carry a precision guard: any valuation or pivot that
//! reaches `N - G` (in uniformizer units, `e*(N - G)` for a DVR) raises
//! `PrecisionExhausted` instead of returning an answer that the truncated
//! model can no longer certify.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactalg::eisenstein::EisensteinDatum;

/// Precision guard width, in p-adic digits.
pub const PRECISION_GUARD: u32 = 4;

/// A ground ring over which matrices and complexes are defined.
#[derive(Clone, Debug)]
pub enum GroundRing {
    Integers,
    PrimeField(u64),
    TruncatedPadic { p: u64, precision: u32 },
    TruncatedDvr(Arc<EisensteinDatum>),
}

/// A scalar, tagged by representation; the owning `GroundRing` supplies
/// the arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scalar {
    /// Arbitrary-precision integer (ring `Integers`).
    Int(BigInt),
    /// Residue in `[0, p)` or `[0, p^N)`.
    Res(BigInt),
    /// Polynomial in the uniformizer of degree < e, coefficients mod `p^N`.
    Pol(Vec<BigInt>),
}

impl PartialEq for GroundRing {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (GroundRing::Integers, GroundRing::Integers) => true,
            (GroundRing::PrimeField(p), GroundRing::PrimeField(q)) => p == q,
            (
                GroundRing::TruncatedPadic { p, precision },
                GroundRing::TruncatedPadic {
                    p: q,
                    precision: m,
                },
            ) => p == q && precision == m,
            (GroundRing::TruncatedDvr(a), GroundRing::TruncatedDvr(b)) => a == b,
            _ => false,
        }
    }
}
impl Eq for GroundRing {}

impl GroundRing {
    pub fn truncated_padic(p: u64, precision: u32) -> Self {
        GroundRing::TruncatedPadic { p, precision }
    }

    pub fn truncated_dvr(datum: EisensteinDatum) -> Self {
        GroundRing::TruncatedDvr(Arc::new(datum))
    }

    pub fn is_local(&self) -> bool {
        !matches!(self, GroundRing::Integers)
    }

    fn modulus(&self) -> Option<BigInt> {
        match self {
            GroundRing::Integers => None,
            GroundRing::PrimeField(p) => Some(BigInt::from(*p)),
            GroundRing::TruncatedPadic { p, precision } => {
                Some(BigInt::from(*p).pow(*precision))
            }
            GroundRing::TruncatedDvr(d) => Some(d.modulus()),
        }
    }

    pub fn residue_char(&self) -> Option<u64> {
        match self {
            GroundRing::Integers => None,
            GroundRing::PrimeField(p) => Some(*p),
            GroundRing::TruncatedPadic { p, .. } => Some(*p),
            GroundRing::TruncatedDvr(d) => Some(d.p),
        }
    }

    /// Total precision in uniformizer units: scalars with valuation at or
    /// above this are indistinguishable from zero.
    pub fn precision_exponent(&self) -> Option<u64> {
        match self {
            GroundRing::Integers | GroundRing::PrimeField(_) => None,
            GroundRing::TruncatedPadic { precision, .. } => Some(*precision as u64),
            GroundRing::TruncatedDvr(d) => Some(d.e() as u64 * d.precision as u64),
        }
    }

    /// Guard threshold in uniformizer units; may be negative when the
    /// precision is below the guard width, in which case nothing passes.
    pub fn guard_threshold(&self) -> Option<i128> {
        match self {
            GroundRing::Integers | GroundRing::PrimeField(_) => None,
            GroundRing::TruncatedPadic { precision, .. } => {
                Some(*precision as i128 - PRECISION_GUARD as i128)
            }
            GroundRing::TruncatedDvr(d) => {
                Some(d.e() as i128 * (d.precision as i128 - PRECISION_GUARD as i128))
            }
        }
    }

    /// Errors when a valuation used to make a decision lies in the guard
    /// zone.
    pub fn check_valuation_usable(&self, v: u64) -> Result<()> {
        if let Some(th) = self.guard_threshold() {
            if v as i128 >= th {
                return Err(Error::PrecisionExhausted(format!(
                    "valuation {v} reaches guard threshold {th}"
                )));
            }
        }
        Ok(())
    }

    pub fn zero(&self) -> Scalar {
        match self {
            GroundRing::Integers => Scalar::Int(BigInt::zero()),
            GroundRing::PrimeField(_) | GroundRing::TruncatedPadic { .. } => {
                Scalar::Res(BigInt::zero())
            }
            GroundRing::TruncatedDvr(d) => Scalar::Pol(vec![BigInt::zero(); d.e()]),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_bigint(BigInt::one())
    }

    pub fn from_bigint(&self, n: BigInt) -> Scalar {
        match self {
            GroundRing::Integers => Scalar::Int(n),
            GroundRing::PrimeField(_) | GroundRing::TruncatedPadic { .. } => {
                Scalar::Res(n.mod_floor(&self.modulus().unwrap()))
            }
            GroundRing::TruncatedDvr(d) => {
                let mut c = vec![BigInt::zero(); d.e()];
                c[0] = n.mod_floor(&d.modulus());
                Scalar::Pol(c)
            }
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        self.from_bigint(BigInt::from(n))
    }

    /// DVR scalar from uniformizer-power coefficients (constant first, any
    /// length; reduced mod f and mod p^N).
    pub fn dvr_from_coeffs(&self, coeffs: &[BigInt]) -> Scalar {
        match self {
            GroundRing::TruncatedDvr(d) => Scalar::Pol(reduce_poly(d, coeffs)),
            _ => panic!("dvr_from_coeffs on non-DVR ring"),
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Int(n) | Scalar::Res(n) => n.is_zero(),
            Scalar::Pol(c) => c.iter().all(BigInt::is_zero),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Int(x), Scalar::Int(y)) => Scalar::Int(x + y),
            (Scalar::Res(x), Scalar::Res(y)) => {
                Scalar::Res((x + y).mod_floor(&self.modulus().unwrap()))
            }
            (Scalar::Pol(x), Scalar::Pol(y)) => {
                let m = self.modulus().unwrap();
                Scalar::Pol(
                    x.iter()
                        .zip(y)
                        .map(|(u, v)| (u + v).mod_floor(&m))
                        .collect(),
                )
            }
            _ => panic!("scalar representation mismatch"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match a {
            Scalar::Int(x) => Scalar::Int(-x),
            Scalar::Res(x) => Scalar::Res((-x).mod_floor(&self.modulus().unwrap())),
            Scalar::Pol(x) => {
                let m = self.modulus().unwrap();
                Scalar::Pol(x.iter().map(|u| (-u).mod_floor(&m)).collect())
            }
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Int(x), Scalar::Int(y)) => Scalar::Int(x * y),
            (Scalar::Res(x), Scalar::Res(y)) => {
                Scalar::Res((x * y).mod_floor(&self.modulus().unwrap()))
            }
            (Scalar::Pol(x), Scalar::Pol(y)) => {
                let d = self.dvr_datum();
                let mut conv = vec![BigInt::zero(); x.len() + y.len() - 1];
                for (i, xi) in x.iter().enumerate() {
                    if xi.is_zero() {
                        continue;
                    }
                    for (j, yj) in y.iter().enumerate() {
                        conv[i + j] += xi * yj;
                    }
                }
                Scalar::Pol(reduce_poly(d, &conv))
            }
            _ => panic!("scalar representation mismatch"),
        }
    }

    fn dvr_datum(&self) -> &EisensteinDatum {
        match self {
            GroundRing::TruncatedDvr(d) => d,
            _ => panic!("not a DVR ring"),
        }
    }

    /// Uniformizer-adic valuation. `None` means every digit is zero, i.e.
    /// the valuation is indeterminate (at least the precision exponent).
    pub fn valuation(&self, a: &Scalar) -> Option<u64> {
        match (self, a) {
            (GroundRing::Integers, _) => panic!("valuation over Integers is not defined here"),
            (GroundRing::PrimeField(_), Scalar::Res(x)) => {
                if x.is_zero() {
                    None
                } else {
                    Some(0)
                }
            }
            (GroundRing::TruncatedPadic { p, .. }, Scalar::Res(x)) => {
                if x.is_zero() {
                    None
                } else {
                    Some(v_p(x, *p))
                }
            }
            (GroundRing::TruncatedDvr(d), Scalar::Pol(c)) => {
                let e = d.e() as u64;
                let mut best: Option<u64> = None;
                for (i, ci) in c.iter().enumerate() {
                    if ci.is_zero() {
                        continue;
                    }
                    let v = e * v_p(ci, d.p) + i as u64;
                    best = Some(best.map_or(v, |b| b.min(v)));
                }
                best
            }
            _ => panic!("scalar representation mismatch"),
        }
    }

    pub fn is_unit(&self, a: &Scalar) -> bool {
        match self {
            GroundRing::Integers => match a {
                Scalar::Int(n) => n.abs().is_one(),
                _ => false,
            },
            _ => self.valuation(a) == Some(0),
        }
    }

    pub fn inverse(&self, a: &Scalar) -> Result<Scalar> {
        match (self, a) {
            (GroundRing::Integers, Scalar::Int(n)) => {
                if n.abs().is_one() {
                    Ok(Scalar::Int(n.clone()))
                } else {
                    Err(Error::DegenerateInput(format!("{n} is not a unit in Z")))
                }
            }
            (GroundRing::PrimeField(_), Scalar::Res(x))
            | (GroundRing::TruncatedPadic { .. }, Scalar::Res(x)) => {
                let m = self.modulus().unwrap();
                Ok(Scalar::Res(mod_inverse(x, &m).ok_or_else(|| {
                    Error::DegenerateInput(format!("{x} is not invertible"))
                })?))
            }
            (GroundRing::TruncatedDvr(d), Scalar::Pol(c)) => {
                if self.valuation(a) != Some(0) {
                    return Err(Error::DegenerateInput("not a unit in the DVR".into()));
                }
                // Newton iteration x <- x(2 - a*x), starting from the
                // inverse of the constant term; the error valuation
                // doubles each step.
                let m = d.modulus();
                let inv0 = mod_inverse(&c[0], &m)
                    .ok_or_else(|| Error::DegenerateInput("constant term not invertible".into()))?;
                let mut x = self.from_bigint(inv0);
                let two = self.from_i64(2);
                let goal = (d.e() as u64 * d.precision as u64).max(2);
                let steps = 64 - (goal - 1).leading_zeros() + 1;
                for _ in 0..steps {
                    let t = self.sub(&two, &self.mul(a, &x));
                    x = self.mul(&x, &t);
                }
                debug_assert!(self.is_zero(&self.sub(&self.mul(a, &x), &self.one())));
                Ok(x)
            }
            _ => panic!("scalar representation mismatch"),
        }
    }

    /// The uniformizer raised to a power, reduced.
    pub fn uniformizer_pow(&self, v: u64) -> Scalar {
        match self {
            GroundRing::Integers => panic!("no uniformizer over Integers"),
            GroundRing::PrimeField(_) => {
                if v == 0 {
                    self.one()
                } else {
                    self.zero()
                }
            }
            GroundRing::TruncatedPadic { p, precision } => {
                if v >= *precision as u64 {
                    self.zero()
                } else {
                    self.from_bigint(BigInt::from(*p).pow(v as u32))
                }
            }
            GroundRing::TruncatedDvr(d) => {
                let e = d.e();
                if (v as usize) < e {
                    let mut c = vec![BigInt::zero(); e];
                    c[v as usize] = BigInt::one();
                    Scalar::Pol(c)
                } else {
                    let mut raw = vec![BigInt::zero(); v as usize + 1];
                    raw[v as usize] = BigInt::one();
                    Scalar::Pol(reduce_poly(d, &raw))
                }
            }
        }
    }

    /// Divide by the uniformizer once; `None` when the valuation is zero
    /// (not divisible). Exact in the truncated model.
    pub fn div_uniformizer(&self, a: &Scalar) -> Option<Scalar> {
        match (self, a) {
            (GroundRing::TruncatedPadic { p, .. }, Scalar::Res(x)) => {
                let pb = BigInt::from(*p);
                if (x % &pb).is_zero() {
                    Some(Scalar::Res(x / &pb))
                } else {
                    None
                }
            }
            (GroundRing::TruncatedDvr(d), Scalar::Pol(c)) => {
                // Solve pi * out = a coefficientwise:
                //   a_0 = out_{e-1} * u * p
                //   a_j = out_{j-1} + out_{e-1} * p * g_{j-1}
                let m = d.modulus();
                let pb = BigInt::from(d.p);
                if !(&c[0] % &pb).is_zero() {
                    return None;
                }
                let u_inv = mod_inverse(&d.unit, &m).expect("datum unit is invertible");
                let e = d.e();
                let top = ((&c[0] / &pb) * &u_inv).mod_floor(&m);
                let mut out = vec![BigInt::zero(); e];
                for j in 1..e {
                    out[j - 1] = (&c[j] - &top * &pb * &d.g[j - 1]).mod_floor(&m);
                }
                out[e - 1] = top;
                Some(Scalar::Pol(out))
            }
            (GroundRing::PrimeField(_), _) => None,
            _ => panic!("scalar representation mismatch"),
        }
    }

    /// Exact division `a / b` in a local ring, requiring
    /// `v(a) >= v(b)`. Guards the divisor's valuation.
    pub fn div_exact(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        if self.is_zero(a) {
            return Ok(self.zero());
        }
        match self {
            GroundRing::Integers => match (a, b) {
                (Scalar::Int(x), Scalar::Int(y)) => {
                    let (q, r) = x.div_rem(y);
                    if r.is_zero() {
                        Ok(Scalar::Int(q))
                    } else {
                        Err(Error::DegenerateInput("inexact integer division".into()))
                    }
                }
                _ => panic!("scalar representation mismatch"),
            },
            GroundRing::PrimeField(_) => Ok(self.mul(a, &self.inverse(b)?)),
            _ => {
                let vb = self
                    .valuation(b)
                    .ok_or_else(|| Error::PrecisionExhausted("division by zero residue".into()))?;
                self.check_valuation_usable(vb)?;
                let mut unit = b.clone();
                for _ in 0..vb {
                    unit = self.div_uniformizer(&unit).expect("valuation accounted");
                }
                let mut q = self.mul(a, &self.inverse(&unit)?);
                for _ in 0..vb {
                    q = self.div_uniformizer(&q).ok_or_else(|| {
                        Error::DegenerateInput("dividend valuation below divisor".into())
                    })?;
                }
                Ok(q)
            }
        }
    }

    /// Residue of a scalar in `k = F_p` (constant digit mod p). Only for
    /// truncated rings.
    pub fn residue_in_k(&self, a: &Scalar) -> u64 {
        let p = self.residue_char().expect("local ring");
        let pb = BigInt::from(p);
        let c = match a {
            Scalar::Res(x) => x.mod_floor(&pb),
            Scalar::Pol(c) => c[0].mod_floor(&pb),
            Scalar::Int(_) => panic!("residue_in_k over Integers"),
        };
        let (_, digits) = c.to_u64_digits();
        digits.first().copied().unwrap_or(0)
    }

    pub fn format_scalar(&self, a: &Scalar) -> String {
        match a {
            Scalar::Int(n) | Scalar::Res(n) => n.to_string(),
            Scalar::Pol(c) => {
                let mut parts = Vec::new();
                for (i, ci) in c.iter().enumerate() {
                    if ci.is_zero() {
                        continue;
                    }
                    match i {
                        0 => parts.push(ci.to_string()),
                        1 => parts.push(format!("{ci}*pi")),
                        _ => parts.push(format!("{ci}*pi^{i}")),
                    }
                }
                if parts.is_empty() {
                    "0".into()
                } else {
                    parts.join(" + ")
                }
            }
        }
    }
}

impl fmt::Display for GroundRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroundRing::Integers => write!(f, "Z"),
            GroundRing::PrimeField(p) => write!(f, "F_{p}"),
            GroundRing::TruncatedPadic { p, precision } => write!(f, "Z_{p} (mod {p}^{precision})"),
            GroundRing::TruncatedDvr(d) => {
                write!(f, "Z_{}[pi]/({}) (mod {}^{})", d.p, d.describe(), d.p, d.precision)
            }
        }
    }
}

fn reduce_poly(d: &EisensteinDatum, raw: &[BigInt]) -> Vec<BigInt> {
    d.reduce_mod_f(raw)
}

/// p-adic valuation of a nonzero integer.
pub fn v_p(n: &BigInt, p: u64) -> u64 {
    debug_assert!(!n.is_zero());
    let pb = BigInt::from(p);
    let mut v = 0u64;
    let mut m = n.abs();
    loop {
        let (q, r) = m.div_rem(&pb);
        if r.is_zero() {
            v += 1;
            m = q;
        } else {
            return v;
        }
    }
}

/// Modular inverse, `None` when not coprime.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let a = a.mod_floor(m);
    let ext = a.extended_gcd(m);
    if ext.gcd.is_one() {
        Some(ext.x.mod_floor(m))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dvr_x2_minus_2(n: u32) -> GroundRing {
        GroundRing::truncated_dvr(
            EisensteinDatum::new(2, n, 2, vec![BigInt::zero()], BigInt::one()).unwrap(),
        )
    }

    #[test]
    fn dvr_relation_pi_squared_is_two() {
        let r = dvr_x2_minus_2(12);
        let pi = r.uniformizer_pow(1);
        let two = r.from_i64(2);
        assert_eq!(r.mul(&pi, &pi), two);
    }

    #[test]
    fn dvr_valuation_mixed_terms() {
        // v(2 + pi) = min(e*1 + 0, 1) = 1; v(4) = 4; v(2*pi) = 3
        let r = dvr_x2_minus_2(12);
        let a = r.dvr_from_coeffs(&[2.into(), 1.into()]);
        assert_eq!(r.valuation(&a), Some(1));
        assert_eq!(r.valuation(&r.from_i64(4)), Some(4));
        let two_pi = r.mul(&r.from_i64(2), &r.uniformizer_pow(1));
        assert_eq!(r.valuation(&two_pi), Some(3));
        assert_eq!(r.valuation(&r.zero()), None);
    }

    #[test]
    fn dvr_inverse_and_division() {
        let r = dvr_x2_minus_2(12);
        let a = r.dvr_from_coeffs(&[3.into(), 2.into()]); // unit: v = 0
        let inv = r.inverse(&a).unwrap();
        assert_eq!(r.mul(&a, &inv), r.one());

        // (pi^3 * a) / pi = pi^2 * a = 2a
        let pi3a = r.mul(&r.uniformizer_pow(3), &a);
        let q = r.div_exact(&pi3a, &r.uniformizer_pow(1)).unwrap();
        assert_eq!(q, r.mul(&r.from_i64(2), &a));
    }

    #[test]
    fn padic_div_and_guard() {
        let r = GroundRing::truncated_padic(2, 12);
        let a = r.from_i64(24);
        assert_eq!(r.valuation(&a), Some(3));
        let q = r.div_exact(&a, &r.from_i64(8)).unwrap();
        assert_eq!(q, r.from_i64(3));
        // guard: valuation 8 >= 12 - 4 trips
        assert!(r.check_valuation_usable(7).is_ok());
        assert!(r.check_valuation_usable(8).is_err());
    }

    #[test]
    fn negative_guard_threshold_rejects_everything() {
        let r = GroundRing::truncated_padic(3, 3);
        assert!(r.check_valuation_usable(0).is_err());
    }

    #[test]
    fn wild_dvr_valuation_of_derivative() {
        // x^3 - 3 at p = 3: v(f'(pi)) = v(3 pi^2) = 3 + 2 = 5
        let d = EisensteinDatum::new(3, 16, 3, vec![BigInt::zero(); 2], BigInt::one()).unwrap();
        let r = GroundRing::truncated_dvr(d.clone());
        let fp = r.dvr_from_coeffs(&d.f_prime_coeffs());
        assert_eq!(r.valuation(&fp), Some(5));
    }
}
