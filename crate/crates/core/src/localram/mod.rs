//! Local totally ramified extensions as Eisenstein data, ramification
//! classification with derived witnesses, solid-algebra checks, and the
//! tower fiber-sequence verification.

pub mod solid;
pub mod tensor;
pub mod triple;
pub mod verify;
pub mod witness;

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::exactalg::eisenstein::EisensteinDatum;
use crate::exactalg::poly;
use crate::numberfield::completion::{default_precision, lifted_factors};
use crate::numberfield::NumberRing;

pub use solid::{check_solid, CatalogMap, SolidReport};
pub use tensor::{build_tensor_square, IdealI, TensorSquare};
pub use triple::{triple_fiber_check, TripleReport};
pub use verify::{verify_l2, verify_mainlemma, L2Report, MainLemmaReport};
pub use witness::{omega_witness, OmegaWitness, WitnessCertificate};

/// Classical ramification class of one local factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RamClass {
    Unramified,
    TotallyRamified,
    Mixed,
}

impl RamClass {
    pub fn of(e: u32, f: u32) -> RamClass {
        if e == 1 {
            RamClass::Unramified
        } else if f == 1 {
            RamClass::TotallyRamified
        } else {
            RamClass::Mixed
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            RamClass::Unramified => "unramified",
            RamClass::TotallyRamified => "totally-ramified",
            RamClass::Mixed => "mixed",
        }
    }
}

/// One prime of the completion at `p`.
#[derive(Clone, Debug)]
pub struct LocalFactor {
    pub e: u32,
    pub f: u32,
    /// Differential exponent at this prime.
    pub d: u64,
    pub class: RamClass,
    /// Residue root of the factor when `f = 1`.
    pub root: Option<u64>,
    /// Eisenstein presentation, available exactly when `f = 1`.
    pub datum: Option<EisensteinDatum>,
}

#[derive(Clone, Debug)]
pub struct LocalExtensionReport {
    pub p: u64,
    pub precision: u32,
    pub factors: Vec<LocalFactor>,
}

/// Complete a monogenic order at `p` and extract Eisenstein data for the
/// totally ramified factors. Requires `p`-maximality; factors with
/// residue degree above one carry classification only.
pub fn localize(a: &NumberRing, p: u64, precision: Option<u32>) -> Result<LocalExtensionReport> {
    if !a.dedekind_maximal(p)? {
        return Err(Error::NotMaximal {
            prime: p,
            detail: format!("Z[theta] for {} fails the Dedekind criterion", a.describe()),
        });
    }
    let precision = precision.unwrap_or_else(|| default_precision(a, p));
    // one extra digit so dividing by p during extraction stays exact
    let lifted = lifted_factors(a, p, precision + 1)?;
    let mut factors = Vec::new();
    for lf in lifted {
        let class = RamClass::of(lf.e, lf.f);
        let datum = match (lf.f, lf.root) {
            (1, Some(root)) => {
                if lf.e == 1 {
                    // trivial completion: A = Z_p, presented canonically
                    Some(EisensteinDatum::trivial(p, precision))
                } else {
                    // translate theta by the residue root; maximality
                    // forces the translate to be Eisenstein
                    let shifted = poly::translate(&lf.poly, &BigInt::from(root));
                    Some(EisensteinDatum::from_polynomial(p, precision, &shifted)?)
                }
            }
            _ => None,
        };
        factors.push(LocalFactor {
            e: lf.e,
            f: lf.f,
            d: lf.d,
            class,
            root: lf.root,
            datum,
        });
    }
    Ok(LocalExtensionReport {
        p,
        precision,
        factors,
    })
}

/// Derived witness attached to one classified factor.
#[derive(Clone, Debug)]
pub enum ClassWitness {
    /// Unramified: the local differentials vanish (`d = 0`).
    OmegaVanishes,
    /// Totally ramified: the chain-level equivalence certificate.
    MainLemma(Box<MainLemmaReport>),
    /// Mixed residue extension: classical data only.
    ClassicalOnly,
}

#[derive(Clone, Debug)]
pub struct ClassifiedFactor {
    pub factor: LocalFactor,
    pub witness: ClassWitness,
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub p: u64,
    pub precision: u32,
    pub factors: Vec<ClassifiedFactor>,
}

impl Classification {
    /// Every factor unramified.
    pub fn unramified(&self) -> bool {
        self.factors
            .iter()
            .all(|c| c.factor.class == RamClass::Unramified)
    }
}

/// Classify `p` in the order and attach the derived witnesses: the
/// vanishing of local differentials for unramified factors, and the full
/// chain-level certificate for totally ramified ones.
pub fn classify(a: &NumberRing, p: u64, precision: Option<u32>) -> Result<Classification> {
    let report = localize(a, p, precision)?;
    let mut out = Vec::new();
    for factor in report.factors {
        let witness = match factor.class {
            RamClass::Unramified => {
                if factor.d != 0 {
                    return Err(Error::MismatchFailure(format!(
                        "unramified factor with nonzero differential exponent {}",
                        factor.d
                    )));
                }
                ClassWitness::OmegaVanishes
            }
            RamClass::TotallyRamified => {
                let datum = factor
                    .datum
                    .clone()
                    .ok_or_else(|| Error::NoEisensteinForm("missing datum".into()))?;
                let rep = verify_mainlemma(&Arc::new(datum), false)?;
                // the local exponents agree between pipelines
                if rep.witness.certificate.differential_exponent != factor.d {
                    return Err(Error::MismatchFailure(format!(
                        "differential exponent disagreement: resultant gives {}, f'(pi) gives {}",
                        factor.d, rep.witness.certificate.differential_exponent
                    )));
                }
                ClassWitness::MainLemma(Box::new(rep))
            }
            RamClass::Mixed => ClassWitness::ClassicalOnly,
        };
        out.push(ClassifiedFactor { factor, witness });
    }
    Ok(Classification {
        p,
        precision: report.precision,
        factors: out,
    })
}

/// Tame/wild consistency: `d = e - 1` exactly when `p` does not divide
/// `e`.
pub fn tame_dichotomy_holds(factor: &LocalFactor, p: u64) -> bool {
    if !(factor.e as u64).is_multiple_of(p) {
        factor.d == factor.e as u64 - 1
    } else {
        factor.d >= factor.e as u64
    }
}

/// The local Kähler group at `p` (direct sum over the primes above `p`),
/// used for completion-coherence checks against the global group.
pub fn local_omega1(a: &NumberRing, p: u64) -> Result<crate::exactalg::finab::FinAbGroup> {
    crate::numberfield::completion::local_omega1_at(a, p)
}

/// Same group computed the DVR way, for totally ramified primes: the
/// Smith form of `pi^d` on the truncated extension, converted to its
/// underlying abelian group. Cross-checks `local_omega1`.
pub fn local_omega1_dvr(
    datum: &EisensteinDatum,
    d: u64,
) -> Result<crate::exactalg::finab::FinAbGroup> {
    use crate::exactalg::matrix::Matrix;
    use crate::exactalg::ring::GroundRing;
    use crate::exactalg::smith::dvr_smith_form;
    let ring = GroundRing::truncated_dvr(datum.clone());
    // multiplication by pi^d on A itself: a 1x1 matrix over the DVR
    let m = Matrix::from_fn(ring.clone(), 1, 1, |_, _| ring.uniformizer_pow(d));
    let snf = dvr_smith_form(&m)?;
    let vals = snf.factor_valuations();
    let group = crate::homalg::homology::HomologyGroup::Local {
        free_rank: 1 - snf.rank,
        valuations: vals.into_iter().filter(|&v| v > 0).collect(),
    };
    group.to_ab_group(&ring)
}

/// Integer quotient `n / m` when exact (helper for divisibility checks).
pub(crate) fn exact_u64_div(n: u64, m: u64) -> Option<u64> {
    let (q, r) = n.div_rem(&m);
    if r == 0 {
        Some(q)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::finab::FinAbGroup;

    fn ring(coeffs: &[i64]) -> NumberRing {
        NumberRing::from_i64(coeffs).unwrap()
    }

    #[test]
    fn gaussian_at_two_is_totally_ramified_with_datum() {
        let rep = localize(&ring(&[1, 0, 1]), 2, Some(16)).unwrap();
        assert_eq!(rep.factors.len(), 1);
        let f = &rep.factors[0];
        assert_eq!((f.e, f.f), (2, 1));
        assert_eq!(f.class, RamClass::TotallyRamified);
        let d = f.datum.as_ref().unwrap();
        // translated minimal polynomial y^2 + 2y + 2: -u p = 2
        assert_eq!(d.degree, 2);
        let m = d.modulus();
        assert_eq!(
            (&d.unit * BigInt::from(2)).mod_floor(&m),
            (-BigInt::from(2)).mod_floor(&m)
        );
    }

    #[test]
    fn gaussian_at_three_is_unramified_inert() {
        let rep = localize(&ring(&[1, 0, 1]), 3, None).unwrap();
        assert_eq!(rep.factors.len(), 1);
        let f = &rep.factors[0];
        assert_eq!((f.e, f.f), (1, 2));
        assert_eq!(f.class, RamClass::Unramified);
        assert!(f.datum.is_none());
    }

    #[test]
    fn cyclotomic_twelve_at_three_is_mixed() {
        let rep = localize(&ring(&[1, 0, -1, 0, 1]), 3, None).unwrap();
        assert_eq!(rep.factors.len(), 1);
        let f = &rep.factors[0];
        assert_eq!((f.e, f.f), (2, 2));
        assert_eq!(f.class, RamClass::Mixed);
        assert!(f.datum.is_none());
    }

    #[test]
    fn non_maximal_is_refused() {
        assert!(matches!(
            localize(&ring(&[3, 0, 1]), 2, None),
            Err(Error::NotMaximal { prime: 2, .. })
        ));
    }

    #[test]
    fn classification_with_witnesses() {
        // x^2+1 at 2: totally ramified with a full certificate
        let c = classify(&ring(&[1, 0, 1]), 2, None).unwrap();
        assert!(matches!(c.factors[0].witness, ClassWitness::MainLemma(_)));
        // at 5: split, both unramified
        let c = classify(&ring(&[1, 0, 1]), 5, None).unwrap();
        assert_eq!(c.factors.len(), 2);
        assert!(c.unramified());
        // degree-1 field: always unramified
        let c = classify(&ring(&[0, 1]), 7, None).unwrap();
        assert!(c.unramified());
    }

    #[test]
    fn tame_wild_dichotomy_on_corpus() {
        for (coeffs, p) in [
            (vec![1i64, 0, 1], 2u64),
            (vec![-2, 0, 1], 2),
            (vec![1, 1, 1], 3),
            (vec![-2, 0, 0, 1], 2),
            (vec![-2, 0, 0, 1], 3),
            (vec![-3, 0, 0, 1], 3),
            (vec![-2, 0, 0, 0, 1], 2),
        ] {
            let rep = localize(&ring(&coeffs), p, None).unwrap();
            for f in &rep.factors {
                assert!(tame_dichotomy_holds(f, p), "{coeffs:?} at {p}");
            }
        }
    }

    #[test]
    fn mixed_prime_local_groups_of_the_twelfth_cyclotomic() {
        // e = f = 2 at both bad primes; at 2 the exponent is 2, so the
        // local group is O/2O = (Z/2)^4, at 3 it is the residue field
        // F_9 = (Z/3)^2; the global group Z/2 + Z/2 + Z/6 + Z/6 has
        // exactly these primary parts and order |disc| = 144
        let a = ring(&[1, 0, -1, 0, 1]);
        assert_eq!(
            local_omega1(&a, 2).unwrap(),
            FinAbGroup::from_factors(0, vec![2.into(); 4])
        );
        assert_eq!(
            local_omega1(&a, 3).unwrap(),
            FinAbGroup::from_factors(0, vec![3.into(); 2])
        );
        let global = a.kaehler_global().unwrap();
        assert_eq!(
            global,
            FinAbGroup::from_factors(0, vec![2.into(), 2.into(), 6.into(), 6.into()])
        );
    }

    #[test]
    fn dvr_route_matches_padic_route_for_local_omega() {
        // x^2 - 2 at 2: both must give Z/4 + Z/2
        let a = ring(&[-2, 0, 1]);
        let rep = localize(&a, 2, None).unwrap();
        let f = &rep.factors[0];
        let via_padic = local_omega1(&a, 2).unwrap();
        let via_dvr = local_omega1_dvr(f.datum.as_ref().unwrap(), f.d).unwrap();
        assert_eq!(via_padic, via_dvr);
        assert_eq!(
            via_dvr,
            FinAbGroup::from_factors(0, vec![2.into(), 4.into()])
        );
    }
}
