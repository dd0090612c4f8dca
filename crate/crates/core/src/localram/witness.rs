//! The explicit degree-one witness class `(omega_1, omega_2)` of the
//! tensor-square ideal and its certificate.
//!
//! For `f(x) = x^e - p x g(x) - u p` the pair is
//!
//! ```text
//! omega_1 = pi1^{e-1} - pi2^{e-1}
//! omega_2 = u^{-1} g(pi1) (pi2^{e-1} - p g(pi2)) d(pi)
//!           + p (g(pi1) - g(pi2)) - pi2^{e-2} d(pi)
//! ```
//!
//! The certificate checks three identities, all of which are theorems,
//! so a failure signals an implementation bug rather than bad input:
//! (a) both elements kill multiplication, (b) `pi1 omega_1 = pi2 omega_2`
//! in the tensor square, (c) in the differential coordinate,
//! `pi * (omega_1 - omega_2) = f'(pi)`, an exact identity in `A` that
//! also pins the valuation of the class at `d - 1`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exactalg::bivar::BivarElem;
use crate::exactalg::eisenstein::EisensteinDatum;
use crate::exactalg::ring::{mod_inverse, GroundRing};
use crate::localram::tensor::{build_tensor_square, d_pi, TensorSquare};

#[derive(Clone, Debug)]
pub struct OmegaWitness {
    pub omega1: BivarElem,
    pub omega2: BivarElem,
    pub certificate: WitnessCertificate,
}

#[derive(Clone, Debug)]
pub struct WitnessCertificate {
    /// (a) both elements lie in the ideal `I`.
    pub in_ideal: bool,
    /// (b) `pi1 omega_1 - pi2 omega_2 = 0` exactly.
    pub relation_holds: bool,
    /// (c) `pi * coord(omega_1 - omega_2) = f'(pi)` exactly in `A`.
    pub derivative_identity: bool,
    /// Valuation of the differential coordinate; equals `d - 1`, one
    /// below the annihilator of `d(pi)`, so the class is nonzero in
    /// `Omega^1`.
    pub coordinate_valuation: u64,
    /// `d = v(f'(pi))`.
    pub differential_exponent: u64,
}

impl WitnessCertificate {
    pub fn all_hold(&self) -> bool {
        self.in_ideal
            && self.relation_holds
            && self.derivative_identity
            && self.coordinate_valuation + 1 == self.differential_exponent
    }
}

/// Construct the witness pair and check its certificate.
pub fn omega_witness(datum: &Arc<EisensteinDatum>) -> Result<OmegaWitness> {
    omega_witness_in(datum, &build_tensor_square(datum))
}

/// Variant reusing an already-built tensor square.
pub fn omega_witness_in(
    datum: &Arc<EisensteinDatum>,
    square: &TensorSquare,
) -> Result<OmegaWitness> {
    let e = datum.e();
    if e < 2 {
        return Err(Error::DegenerateInput(
            "the witness class needs ramification degree e >= 2".into(),
        ));
    }
    let m = datum.modulus();
    let p = BigInt::from(datum.p);
    let u_inv = mod_inverse(&datum.unit, &m).expect("datum unit");

    let dpi = d_pi(datum);
    let omega1 = BivarElem::monomial(datum, e - 1, 0, BigInt::one())
        .sub(&BivarElem::monomial(datum, 0, e - 1, BigInt::one()));

    let g1 = BivarElem::from_univariate(datum, &datum.g, true);
    let g2 = BivarElem::from_univariate(datum, &datum.g, false);
    let pi2_pow = BivarElem::monomial(datum, 0, e - 1, BigInt::one());
    let first = g1
        .scale(&u_inv)
        .mul(&pi2_pow.sub(&g2.scale(&p)))
        .mul(&dpi);
    let second = g1.sub(&g2).scale(&p);
    let third = BivarElem::monomial(datum, 0, e - 2, BigInt::one()).mul(&dpi);
    let omega2 = first.add(&second).sub(&third);

    // (a) membership in I
    let in_ideal = square.in_ideal(&omega1) && square.in_ideal(&omega2);
    // (b) pi1 omega1 - pi2 omega2 = 0
    let pi1 = BivarElem::monomial(datum, 1, 0, BigInt::one());
    let pi2 = BivarElem::monomial(datum, 0, 1, BigInt::one());
    let relation_holds = pi1.mul(&omega1).sub(&pi2.mul(&omega2)).is_zero();
    // (c) the exact identity pi * coord = f'(pi) in A
    let coord = omega1.sub(&omega2).omega_coordinate();
    let mut shifted = vec![BigInt::from(0)];
    shifted.extend(coord.iter().cloned());
    let pi_coord = datum.reduce_mod_f(&shifted);
    let f_prime = datum.f_prime_coeffs();
    let derivative_identity = pi_coord
        .iter()
        .zip(&f_prime)
        .all(|(a, b)| a.mod_floor(&m) == b.mod_floor(&m));

    let dvr = GroundRing::truncated_dvr(datum.as_ref().clone());
    let d = dvr
        .valuation(&dvr.dvr_from_coeffs(&f_prime))
        .ok_or_else(|| Error::PrecisionExhausted("f'(pi) vanishes mod p^N".into()))?;
    dvr.check_valuation_usable(d)?;
    let coordinate_valuation = dvr
        .valuation(&dvr.dvr_from_coeffs(&coord))
        .ok_or_else(|| Error::WitnessFailure("differential coordinate vanishes".into()))?;

    let certificate = WitnessCertificate {
        in_ideal,
        relation_holds,
        derivative_identity,
        coordinate_valuation,
        differential_exponent: d,
    };
    if !certificate.all_hold() {
        return Err(Error::WitnessFailure(format!(
            "certificate failed: {certificate:?}"
        )));
    }
    Ok(OmegaWitness {
        omega1,
        omega2,
        certificate,
    })
}
