//! Chain-level verification of the two central local statements: the
//! two-pipeline homology computation of `Omega^1 (x)_A k`, and the weak
//! equivalence between the three-term ideal complex and the two-term
//! differential complex, certified degreewise together with the
//! fiber-sequence restatement over the residue field.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactalg::eisenstein::EisensteinDatum;
use crate::exactalg::matrix::Matrix;
use crate::exactalg::ring::GroundRing;
use crate::homalg::complex::{mapping_fiber, ChainComplex, ChainMap};
use crate::homalg::homology::{homology, homology_data, induced_is_iso, HomologyResult};
use crate::homalg::les::les_exactness;
use crate::localram::tensor::{a_mult_matrix, build_tensor_square};
use crate::localram::witness::{omega_witness_in, OmegaWitness};

/// Both homology pipelines for `Omega^1 (x)_A k`.
#[derive(Clone, Debug)]
pub struct L2Report {
    /// `d = v(f'(pi))`, the differential exponent.
    pub differential_exponent: u64,
    /// Homology of `A/(pi^d) --pi--> A/(pi^d)` over the truncated DVR.
    pub left: HomologyResult,
    /// Homology of `pi k[pi]/(pi^e) --pi--> pi k[pi]/(pi^e)` over `F_p`.
    pub right: HomologyResult,
    /// Dimensions `(H_0, H_1)`, equal on both sides.
    pub dims: (usize, usize),
}

/// Compute both sides independently; they must each be `k` in degrees 0
/// and 1 (zero for the trivial extension `e = 1`).
pub fn verify_l2(datum: &Arc<EisensteinDatum>) -> Result<L2Report> {
    let e = datum.e();
    let dvr = GroundRing::truncated_dvr(datum.as_ref().clone());
    let f_prime = datum.f_prime_coeffs();
    let d = match dvr.valuation(&dvr.dvr_from_coeffs(&f_prime)) {
        Some(v) => {
            dvr.check_valuation_usable(v)?;
            v
        }
        None => {
            return Err(Error::PrecisionExhausted(
                "f'(pi) vanishes to working precision".into(),
            ))
        }
    };

    // left pipeline: Omega^1 = A/(pi^d), complex multiplication by pi
    let left = {
        let rel = crate::homalg::homology::scalar_matrix(&dvr, dvr.uniformizer_pow(d));
        let diff = crate::homalg::homology::scalar_matrix(&dvr, dvr.uniformizer_pow(1));
        let c = ChainComplex::new(
            dvr.clone(),
            0,
            vec![1, 1],
            vec![Some(rel.clone()), Some(rel)],
            vec![diff],
        )?;
        homology(&c)?
    };

    // right pipeline: I (x)_A k = pi k[pi]/(pi^e), nilpotent shift
    let right = {
        let k = GroundRing::PrimeField(datum.p);
        let dim = e - 1;
        let shift = Matrix::from_fn(k.clone(), dim, dim, |i, j| {
            if i == j + 1 {
                k.one()
            } else {
                k.zero()
            }
        });
        let c = ChainComplex::free(k, 0, vec![dim, dim], vec![shift])?;
        homology(&c)?
    };

    let expect = if e >= 2 { 1 } else { 0 };
    let dims_of = |h: &HomologyResult, side: &str| -> Result<(usize, usize)> {
        let d0 = h.k_dim_at(0).ok_or_else(|| {
            Error::MismatchFailure(format!("{side} H_0 is not a k-vector space"))
        })?;
        let d1 = h.k_dim_at(1).ok_or_else(|| {
            Error::MismatchFailure(format!("{side} H_1 is not a k-vector space"))
        })?;
        Ok((d0, d1))
    };
    let ld = dims_of(&left, "left")?;
    let rd = dims_of(&right, "right")?;
    if ld != (expect, expect) || rd != (expect, expect) {
        return Err(Error::MismatchFailure(format!(
            "homology dimensions {ld:?} / {rd:?}, expected ({expect},{expect}) on both sides"
        )));
    }
    Ok(L2Report {
        differential_exponent: d,
        left,
        right,
        dims: ld,
    })
}

/// Full certification of the weak equivalence
/// `[I -> I (+) I -> I]  ~  [0 -> Omega^1 --pi--> Omega^1]`.
#[derive(Clone, Debug)]
pub struct MainLemmaReport {
    pub witness: OmegaWitness,
    pub top_homology: HomologyResult,
    pub bottom_homology: HomologyResult,
    /// Isomorphism certified in degrees 0, 1, 2.
    pub iso_in_degrees: [bool; 3],
    /// The restatement as a fiber sequence over the residue field:
    /// `H_*(fib(k (x)_R k -> k (x)_A k))` matches the `Omega^1 (x) k`
    /// dimensions.
    pub fiber_restatement_ok: bool,
}

impl MainLemmaReport {
    pub fn certified(&self) -> bool {
        self.witness.certificate.all_hold()
            && self.iso_in_degrees.iter().all(|&b| b)
            && self.fiber_restatement_ok
    }
}

/// Verify the main equivalence for an Eisenstein datum. `corrupt`
/// perturbs the differential exponent of the bottom complex by one, a
/// mutation that must be caught (used to exercise the failure path).
pub fn verify_mainlemma(datum: &Arc<EisensteinDatum>, corrupt: bool) -> Result<MainLemmaReport> {
    let e = datum.e();
    if e < 2 {
        return Err(Error::DegenerateInput(
            "main equivalence needs e >= 2; the trivial extension has I = 0".into(),
        ));
    }
    let square = build_tensor_square(datum);
    let witness = omega_witness_in(datum, &square)?;
    let ideal = square.ideal()?;
    let ring = square.ring.clone();
    let m = ideal.basis.cols;

    // top: I --alpha--> I (+) I --beta--> I with alpha(i) = (pi2 i, pi1 i),
    // beta(i1, i2) = pi1 i1 - pi2 i2
    let beta = ideal.pi1_on_i.hstack(&ideal.pi2_on_i.neg());
    let alpha = ideal.pi2_on_i.vstack(&ideal.pi1_on_i);
    let top = ChainComplex::free(ring.clone(), 0, vec![m, 2 * m, m], vec![beta, alpha])?;

    // bottom: Omega^1 --pi--> Omega^1 over R, Omega^1 = A/(f'(pi))
    let d = witness.certificate.differential_exponent + if corrupt { 1 } else { 0 };
    let mut pi_pow = vec![BigInt::from(0); d as usize + 1];
    pi_pow[d as usize] = BigInt::from(1);
    let rel = a_mult_matrix(datum, &ring, &pi_pow);
    let pi_mat = a_mult_matrix(datum, &ring, &[BigInt::from(0), BigInt::from(1)]);
    let bottom = ChainComplex::new(
        ring.clone(),
        0,
        vec![e, e],
        vec![Some(rel.clone()), Some(rel)],
        vec![pi_mat],
    )?;

    // phi: degree 0 is the differential coordinate I -> Omega^1; degree 1
    // is (i1, i2) -> coord(i1) - coord(i2); degree 2 is zero
    let coord_cols: Vec<Vec<_>> = (0..m)
        .map(|j| {
            let col = ideal.basis.column(j);
            let flat: Vec<BigInt> = col
                .iter()
                .map(|s| match s {
                    crate::exactalg::ring::Scalar::Res(x) => x.clone(),
                    _ => unreachable!("tensor square is over Z/p^N"),
                })
                .collect();
            let bv = crate::exactalg::bivar::BivarElem::from_flat(datum, &flat);
            bv.omega_coordinate()
                .iter()
                .map(|c| ring.from_bigint(c.clone()))
                .collect()
        })
        .collect();
    let coord = Matrix::from_columns(ring.clone(), e, &coord_cols);
    let mut maps = BTreeMap::new();
    maps.insert(0, coord.clone());
    maps.insert(1, coord.hstack(&coord.neg()));
    // the coordinate map is well defined only modulo (pi^d), so a
    // commutation failure here means the comparison data is inconsistent
    let phi = ChainMap::new(&top, &bottom, maps).map_err(|e| match e {
        Error::InvalidInput(msg) => Error::MismatchFailure(msg),
        other => other,
    })?;

    let top_data = homology_data(&top)?;
    let bottom_data = homology_data(&bottom)?;
    let mut iso_in_degrees = [false; 3];
    for (i, deg) in [0i64, 1, 2].iter().enumerate() {
        iso_in_degrees[i] = induced_is_iso(&phi, &top, &top_data, &bottom, &bottom_data, *deg)?;
    }
    let top_homology = top_data.result();
    let bottom_homology = bottom_data.result();
    for h in [&top_homology, &bottom_homology] {
        for deg in [0i64, 1] {
            if h.k_dim_at(deg) != Some(1) {
                return Err(Error::MismatchFailure(format!(
                    "H_{deg} is not one-dimensional over k"
                )));
            }
        }
        if !h.is_zero_at(2) {
            return Err(Error::MismatchFailure("H_2 does not vanish".into()));
        }
    }
    if iso_in_degrees.iter().any(|&b| !b) {
        return Err(Error::MismatchFailure(format!(
            "comparison map fails to be an isomorphism in degrees {iso_in_degrees:?}"
        )));
    }

    let fiber_restatement_ok = fiber_restatement(datum)?;
    if !fiber_restatement_ok {
        return Err(Error::MismatchFailure(
            "fiber-sequence restatement over the residue field failed".into(),
        ));
    }

    Ok(MainLemmaReport {
        witness,
        top_homology,
        bottom_homology,
        iso_in_degrees,
        fiber_restatement_ok,
    })
}

/// The restatement: `H_* fib(k (x)_R k -> k (x)_A k)` has the
/// `Omega^1 (x)_A k` dimensions (1, 1) in degrees (0, 1), with an exact
/// long sequence. The comparison map's degree-1 component is the residue
/// of `p / pi`, computed in the truncated DVR.
fn fiber_restatement(datum: &Arc<EisensteinDatum>) -> Result<bool> {
    let e = datum.e();
    let dvr = GroundRing::truncated_dvr(datum.as_ref().clone());
    let p_over_pi = dvr
        .div_exact(&dvr.from_i64(datum.p as i64), &dvr.uniformizer_pow(1))
        .map_err(|_| Error::MismatchFailure("p is not divisible by pi".into()))?;
    let residue = dvr.residue_in_k(&p_over_pi);

    let k = GroundRing::PrimeField(datum.p);
    let zero_diff = Matrix::zero(k.clone(), 1, 1);
    let x = ChainComplex::free(k.clone(), 0, vec![1, 1], vec![zero_diff.clone()])?;
    let y = ChainComplex::free(k.clone(), 0, vec![1, 1], vec![zero_diff])?;
    let mut maps = BTreeMap::new();
    maps.insert(0, Matrix::identity(k.clone(), 1));
    maps.insert(
        1,
        crate::homalg::homology::scalar_matrix(&k, k.from_i64(residue as i64)),
    );
    let phi = ChainMap::new(&x, &y, maps)?;
    let triple = mapping_fiber(&x, &y, &phi)?;
    let h = homology(&triple.fiber)?;
    les_exactness(&triple, 4)?;
    let expect = if e >= 2 { 1 } else { 0 };
    Ok(h.k_dim_at(0) == Some(expect)
        && h.k_dim_at(1) == Some(expect)
        && h.is_zero_at(-1)
        && h.is_zero_at(2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum(p: u64, e: u32, g: Vec<i64>, u: i64) -> Arc<EisensteinDatum> {
        Arc::new(
            EisensteinDatum::new(
                p,
                16,
                e,
                g.into_iter().map(BigInt::from).collect(),
                BigInt::from(u),
            )
            .unwrap(),
        )
    }

    #[test]
    fn l2_for_sqrt2_at_two() {
        // d = 3; both pipelines give k in degrees 0, 1
        let r = verify_l2(&datum(2, 2, vec![0], 1)).unwrap();
        assert_eq!(r.differential_exponent, 3);
        assert_eq!(r.dims, (1, 1));
    }

    #[test]
    fn l2_trivial_extension_vanishes() {
        let r = verify_l2(&datum(5, 1, vec![], 1)).unwrap();
        assert_eq!(r.differential_exponent, 0);
        assert_eq!(r.dims, (0, 0));
    }

    #[test]
    fn l2_wild_cube_at_three() {
        // x^3 - 3: d = v(3 pi^2) = 5
        let r = verify_l2(&datum(3, 3, vec![0, 0], 1)).unwrap();
        assert_eq!(r.differential_exponent, 5);
        assert_eq!(r.dims, (1, 1));
    }

    #[test]
    fn l2_precision_guard_trips_at_low_precision() {
        // same wild datum truncated to N = 3: the guard rejects v = 5
        let d = Arc::new(
            EisensteinDatum::new(3, 3, 3, vec![BigInt::from(0); 2], BigInt::from(1)).unwrap(),
        );
        assert!(matches!(
            verify_l2(&d),
            Err(Error::PrecisionExhausted(_))
        ));
    }

    #[test]
    fn mainlemma_for_sqrt2() {
        let r = verify_mainlemma(&datum(2, 2, vec![0], 1), false).unwrap();
        assert!(r.certified());
        assert_eq!(r.top_homology.k_dim_at(0), Some(1));
        assert_eq!(r.bottom_homology.k_dim_at(1), Some(1));
    }

    #[test]
    fn mainlemma_for_cube_root_of_two() {
        let r = verify_mainlemma(&datum(2, 3, vec![0, 0], 1), false).unwrap();
        assert!(r.certified());
    }

    #[test]
    fn mainlemma_for_x2_minus_6_at_3() {
        // g = 0, u = 2
        let r = verify_mainlemma(&datum(3, 2, vec![0], 2), false).unwrap();
        assert!(r.certified());
    }

    #[test]
    fn corrupted_differential_is_caught() {
        let err = verify_mainlemma(&datum(2, 2, vec![0], 1), true);
        assert!(matches!(err, Err(Error::MismatchFailure(_))));
    }
}
