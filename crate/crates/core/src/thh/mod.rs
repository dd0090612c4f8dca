//! Tables of topological and ordinary Hochschild homology groups of
//! rings of integers, from the closed forms, with an independent Tor
//! cross-check and the long-exact-sequence order bookkeeping.

pub mod direct;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::exactalg::finab::FinAbGroup;
use crate::exactalg::matrix::Matrix;
use crate::exactalg::ring::GroundRing;
use crate::exactalg::smith::{hnf_columns, kernel_basis};
use crate::numberfield::completion::{default_precision, lifted_factors, local_quotient_group};
use crate::numberfield::NumberRing;

pub use direct::hochschild_direct;

/// How a table entry was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    ClosedForm,
    LesAssembled,
    TorComputed,
}

impl Provenance {
    pub fn as_str(&self) -> &'static str {
        match self {
            Provenance::ClosedForm => "closed-form",
            Provenance::LesAssembled => "LES-assembled",
            Provenance::TorComputed => "Tor-computed",
        }
    }
}

/// A table of homology groups by degree; absent degrees are zero.
#[derive(Clone, Debug)]
pub struct GroupTable {
    pub name: String,
    pub entries: BTreeMap<i64, (FinAbGroup, Provenance)>,
}

impl GroupTable {
    pub fn group_at(&self, degree: i64) -> FinAbGroup {
        self.entries
            .get(&degree)
            .map(|(g, _)| g.clone())
            .unwrap_or_else(FinAbGroup::trivial)
    }
}

/// Loop-space homology tables used as sphere-base answers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LoopSpace {
    /// Based loops on the three-sphere: a polynomial algebra on a
    /// degree-2 generator, so coefficients in every even degree.
    OmegaS3,
    /// Based loops on its 3-connective cover: `Z` in degree 0 and `Z/n`
    /// in degree `2n - 1`.
    OmegaS3Cover,
}

#[derive(Clone, Debug)]
pub enum LoopCoefficients {
    Integers,
    Group(FinAbGroup),
    Ring(usize),
}

/// The loop-space homology table, tensored with the coefficients.
/// Torsion coefficients are rejected for the cover (the closed form is
/// applied with torsion-free coefficients only).
pub fn loop_homology(
    space: LoopSpace,
    coefficients: &LoopCoefficients,
    max_degree: i64,
) -> Result<GroupTable> {
    let mut entries = BTreeMap::new();
    match space {
        LoopSpace::OmegaS3 => {
            let coeff_group = match coefficients {
                LoopCoefficients::Integers => FinAbGroup::free(1),
                LoopCoefficients::Group(g) => g.clone(),
                LoopCoefficients::Ring(d) => FinAbGroup::free(*d),
            };
            let mut n = 0i64;
            while n <= max_degree {
                if !coeff_group.is_trivial() {
                    entries.insert(n, (coeff_group.clone(), Provenance::ClosedForm));
                }
                n += 2;
            }
        }
        LoopSpace::OmegaS3Cover => {
            let rank = match coefficients {
                LoopCoefficients::Integers => 1,
                LoopCoefficients::Ring(d) => *d,
                LoopCoefficients::Group(g) => {
                    if g.invariants().is_empty() {
                        g.free_rank()
                    } else {
                        return Err(Error::UnsupportedCoefficients(
                            "the cover table needs torsion-free coefficients".into(),
                        ));
                    }
                }
            };
            if max_degree >= 0 {
                entries.insert(0, (FinAbGroup::free(rank), Provenance::ClosedForm));
            }
            let mut n = 1i64;
            while 2 * n - 1 <= max_degree {
                let g = FinAbGroup::from_factors(0, vec![BigInt::from(n); rank]);
                if !g.is_trivial() {
                    entries.insert(2 * n - 1, (g, Provenance::ClosedForm));
                }
                n += 1;
            }
        }
    }
    Ok(GroupTable {
        name: format!("{space:?}"),
        entries,
    })
}

fn require_maximal(a: &NumberRing) -> Result<()> {
    for p in a.ramified_candidates()? {
        if !a.dedekind_maximal(p)? {
            return Err(Error::NotMaximal {
                prime: p,
                detail: format!("{} is not maximal at {p}", a.describe()),
            });
        }
    }
    Ok(())
}

/// THH groups from the closed form: `Z^d` in degree 0, the inverse
/// different mod `n` in degree `2n - 1` (computed as `A/(n f'(theta))`
/// through the principal-ideal identification), zero in positive even
/// degrees.
pub fn thh_groups(a: &NumberRing, max_degree: i64) -> Result<GroupTable> {
    require_maximal(a)?;
    let mut entries = BTreeMap::new();
    if max_degree >= 0 {
        entries.insert(0, (FinAbGroup::free(a.degree()), Provenance::ClosedForm));
    }
    let f_prime = a.f_prime();
    let mut n = 1i64;
    while 2 * n - 1 <= max_degree {
        let scaled: Vec<BigInt> = f_prime.iter().map(|c| c * BigInt::from(n)).collect();
        let g = a.quotient_by_element(&scaled)?;
        if !g.is_trivial() {
            entries.insert(2 * n - 1, (g, Provenance::ClosedForm));
        }
        n += 1;
    }
    Ok(GroupTable {
        name: "THH".into(),
        entries,
    })
}

/// Ordinary Hochschild homology from the closed form: `Z^d` in degree 0,
/// the Kähler differentials in every positive odd degree.
pub fn hochschild_groups(a: &NumberRing, max_degree: i64) -> Result<GroupTable> {
    let omega = a.kaehler_global()?;
    let mut entries = BTreeMap::new();
    if max_degree >= 0 {
        entries.insert(0, (FinAbGroup::free(a.degree()), Provenance::ClosedForm));
    }
    let mut k = 1i64;
    while k <= max_degree {
        if !omega.is_trivial() {
            entries.insert(k, (omega.clone(), Provenance::ClosedForm));
        }
        k += 2;
    }
    Ok(GroupTable {
        name: "HH".into(),
        entries,
    })
}

/// The ramification measure: Kähler differentials in every even degree,
/// zero in odd degrees; consistency-checked against the Hochschild table
/// by order bookkeeping in the connecting long exact sequence
/// (`|Ram_{2k}| = |HH_{2k+1}|`).
pub fn ram_groups(a: &NumberRing, max_degree: i64) -> Result<GroupTable> {
    let omega = a.kaehler_global()?;
    let hh = hochschild_groups(a, max_degree + 1)?;
    let mut entries = BTreeMap::new();
    let mut k = 0i64;
    while k <= max_degree {
        if !omega.is_trivial() {
            entries.insert(k, (omega.clone(), Provenance::ClosedForm));
        }
        // degreewise order bookkeeping against HH
        let hh_next = hh.group_at(k + 1);
        if omega.order() != hh_next.order() {
            return Err(Error::MismatchFailure(format!(
                "|Ram_{k}| = {:?} but |HH_{}| = {:?}",
                omega.order(),
                k + 1,
                hh_next.order()
            )));
        }
        k += 2;
    }
    Ok(GroupTable {
        name: "Ram".into(),
        entries,
    })
}

#[derive(Clone, Debug)]
pub struct LesAssemblyReport {
    /// Per `n`: `(|THH_{2n-1}|, n^d * |disc|)`, which must agree, plus
    /// the verified embedding of `R/nR`.
    pub checks: Vec<(i64, BigInt, BigInt, bool)>,
}

/// Order bookkeeping for the extension
/// `0 -> R/nR -> THH_{2n-1} -> D^{-1}/R -> 0`: the order factors as
/// `n^d * |disc|`, and multiplication by `f'(theta)` embeds `R/nR`
/// (its preimage lattice is exactly `n Z^d`).
pub fn les_assembly_check(a: &NumberRing, max_n: i64) -> Result<LesAssemblyReport> {
    let thh = thh_groups(a, 2 * max_n - 1)?;
    let d = a.degree() as u32;
    let disc = a.discriminant().abs();
    let mut checks = Vec::new();
    let ring = GroundRing::Integers;
    let m_fp = a.mult_matrix(&a.f_prime());
    for n in 1..=max_n {
        let got = thh
            .group_at(2 * n - 1)
            .order()
            .ok_or_else(|| Error::MismatchFailure("infinite THH group".into()))?;
        let expected = BigInt::from(n).pow(d) * &disc;
        if got != expected {
            return Err(Error::ExactnessFailure(format!(
                "n = {n}: |THH_{}| = {got}, expected {expected}",
                2 * n - 1
            )));
        }
        // embedding: {x : f' x in n f' Z^d} = n Z^d
        let scaled = m_fp.scale(&ring.from_i64(n));
        let aug = m_fp.hstack(&scaled);
        let ker = kernel_basis(&aug)?;
        let x_part = ker.take_rows(0..a.degree());
        let (h, _) = hnf_columns(&x_part);
        let n_lattice = Matrix::identity(ring.clone(), a.degree()).scale(&ring.from_i64(n));
        let (hn, _) = hnf_columns(&n_lattice);
        let embeds = h == hn;
        if !embeds {
            return Err(Error::ExactnessFailure(format!(
                "n = {n}: R/nR does not embed via f'(theta)"
            )));
        }
        checks.push((n, got, expected, embeds));
    }
    Ok(LesAssemblyReport { checks })
}

/// Completion coherence for a table entry: the degree-(2n-1) THH entry
/// recomputed from local data at `p` (a p-group, compared against the
/// p-primary part of the global entry).
pub fn local_thh_entry(a: &NumberRing, p: u64, n: i64) -> Result<FinAbGroup> {
    let precision = default_precision(a, p);
    let mut total = FinAbGroup::trivial();
    for factor in lifted_factors(a, p, precision)? {
        let g = local_quotient_group(&factor, p, precision, &BigInt::from(n))?;
        total = total.direct_sum(&g);
    }
    Ok(total)
}

/// Verify completion coherence of the THH table at one prime through the
/// given range: p-part of the global entry against the local one.
pub fn thh_completion_coherent(a: &NumberRing, p: u64, max_n: i64) -> Result<bool> {
    let thh = thh_groups(a, 2 * max_n - 1)?;
    for n in 1..=max_n {
        let global = thh.group_at(2 * n - 1).p_primary(p);
        let local = local_thh_entry(a, p, n)?.p_primary(p);
        if global != local {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(coeffs: &[i64]) -> NumberRing {
        NumberRing::from_i64(coeffs).unwrap()
    }

    #[test]
    fn loop_tables_closed_forms() {
        let t = loop_homology(LoopSpace::OmegaS3, &LoopCoefficients::Integers, 6).unwrap();
        for d in [0i64, 2, 4, 6] {
            assert_eq!(t.group_at(d), FinAbGroup::free(1));
        }
        assert!(t.group_at(1).is_trivial());
        let t = loop_homology(LoopSpace::OmegaS3Cover, &LoopCoefficients::Integers, 5).unwrap();
        assert_eq!(t.group_at(0), FinAbGroup::free(1));
        assert_eq!(t.group_at(5), FinAbGroup::cyclic(3)); // 2n-1 = 5 => n = 3
        assert!(t.group_at(2).is_trivial());
        // torsion coefficients are refused for the cover
        assert!(loop_homology(
            LoopSpace::OmegaS3Cover,
            &LoopCoefficients::Group(FinAbGroup::cyclic(2)),
            3
        )
        .is_err());
        // tensoring the even table with a finite group
        let omega = FinAbGroup::from_factors(0, vec![2.into(), 2.into()]);
        let t =
            loop_homology(LoopSpace::OmegaS3, &LoopCoefficients::Group(omega.clone()), 4).unwrap();
        assert_eq!(t.group_at(4), omega);
    }

    #[test]
    fn thh_of_z_matches_cover_table() {
        let a = ring(&[0, 1]);
        let thh = thh_groups(&a, 9).unwrap();
        let cover =
            loop_homology(LoopSpace::OmegaS3Cover, &LoopCoefficients::Integers, 9).unwrap();
        for d in 0..=9 {
            assert_eq!(thh.group_at(d), cover.group_at(d), "degree {d}");
        }
    }

    #[test]
    fn thh_of_gaussians_frozen_table() {
        // SNF oracle values: deg 1 (Z/2)^2, deg 3 (Z/4)^2, deg 5 (Z/6)^2
        let a = ring(&[1, 0, 1]);
        let thh = thh_groups(&a, 6).unwrap();
        assert_eq!(thh.group_at(0), FinAbGroup::free(2));
        assert_eq!(
            thh.group_at(1),
            FinAbGroup::from_factors(0, vec![2.into(), 2.into()])
        );
        assert!(thh.group_at(2).is_trivial());
        assert_eq!(
            thh.group_at(3),
            FinAbGroup::from_factors(0, vec![4.into(), 4.into()])
        );
        assert!(thh.group_at(4).is_trivial());
        assert_eq!(
            thh.group_at(5),
            FinAbGroup::from_factors(0, vec![6.into(), 6.into()])
        );
    }

    #[test]
    fn les_assembly_on_small_fields() {
        for coeffs in [vec![0i64, 1], vec![1, 0, 1], vec![-2, 0, 1]] {
            les_assembly_check(&ring(&coeffs), 4).unwrap();
        }
    }

    #[test]
    fn thh_degree_one_entries() {
        // |D^{-1}/R| = |disc|: Z/3 for the Eisenstein quadratic of
        // discriminant -3, order 8 for discriminant 8
        let t = thh_groups(&ring(&[1, 1, 1]), 1).unwrap();
        assert_eq!(t.group_at(1), FinAbGroup::cyclic(3));
        let t = thh_groups(&ring(&[-2, 0, 1]), 1).unwrap();
        assert_eq!(t.group_at(1).order().unwrap(), BigInt::from(8));
    }

    #[test]
    fn hochschild_closed_form() {
        let a = ring(&[-2, 0, 1]);
        let hh = hochschild_groups(&a, 5).unwrap();
        let omega = FinAbGroup::from_factors(0, vec![2.into(), 4.into()]);
        assert_eq!(hh.group_at(1), omega);
        assert_eq!(hh.group_at(3), omega);
        assert_eq!(hh.group_at(5), omega);
        assert!(hh.group_at(2).is_trivial());
        assert_eq!(hh.group_at(0), FinAbGroup::free(2));
    }

    #[test]
    fn ram_groups_even_entries_and_bookkeeping() {
        let a = ring(&[1, 0, 1]);
        let ram = ram_groups(&a, 6).unwrap();
        let omega = a.kaehler_global().unwrap();
        for d in [0i64, 2, 4, 6] {
            assert_eq!(ram.group_at(d), omega);
        }
        for d in [1i64, 3, 5] {
            assert!(ram.group_at(d).is_trivial());
        }
        // A = Z: everything vanishes
        let ram = ram_groups(&ring(&[0, 1]), 4).unwrap();
        assert!(ram.entries.is_empty());
    }

    #[test]
    fn thh_requires_maximality() {
        assert!(matches!(
            thh_groups(&ring(&[3, 0, 1]), 3),
            Err(Error::NotMaximal { prime: 2, .. })
        ));
    }

    #[test]
    fn completion_coherence_for_thh() {
        let a = ring(&[1, 0, 1]);
        assert!(thh_completion_coherent(&a, 2, 3).unwrap());
        assert!(thh_completion_coherent(&a, 5, 3).unwrap());
    }
}
