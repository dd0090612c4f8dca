//! Finitely generated abelian groups in invariant-factor normal form.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::exactalg::matrix::Matrix;
use crate::exactalg::ring::{v_p, GroundRing};
use crate::exactalg::smith::{smith_normal_form, SmithForm};

/// `Z^r (+) Z/d_1 (+) ... (+) Z/d_k` with `d_1 | d_2 | ... | d_k` and
/// every `d_i >= 2`. The canonical form is unique, so equality is
/// structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FinAbGroup {
    free_rank: usize,
    invariants: Vec<BigInt>,
}

impl FinAbGroup {
    pub fn trivial() -> Self {
        FinAbGroup::default()
    }

    pub fn free(rank: usize) -> Self {
        FinAbGroup {
            free_rank: rank,
            invariants: vec![],
        }
    }

    pub fn cyclic(n: u64) -> Self {
        FinAbGroup::from_factors(0, vec![BigInt::from(n)])
    }

    /// Canonicalize an arbitrary list of cyclic orders: factors 0 add free
    /// rank, factors 1 vanish, the rest are rebuilt into a divisibility
    /// chain (via the Smith form of their diagonal matrix, which is exact
    /// and avoids integer factorization).
    pub fn from_factors(free_rank: usize, factors: Vec<BigInt>) -> Self {
        let mut free = free_rank;
        let mut tors: Vec<BigInt> = Vec::new();
        for f in factors {
            let a = f.abs();
            if a.is_zero() {
                free += 1;
            } else if !a.is_one() {
                tors.push(a);
            }
        }
        if tors.is_empty() {
            return FinAbGroup {
                free_rank: free,
                invariants: vec![],
            };
        }
        let already_chain = tors.windows(2).all(|w| (&w[1] % &w[0]).is_zero());
        if already_chain {
            return FinAbGroup {
                free_rank: free,
                invariants: tors,
            };
        }
        let ring = GroundRing::Integers;
        let n = tors.len();
        let diag = Matrix::from_fn(ring.clone(), n, n, |i, j| {
            if i == j {
                ring.from_bigint(tors[i].clone())
            } else {
                ring.zero()
            }
        });
        let snf = smith_normal_form(&diag).expect("integer SNF");
        let invariants = snf
            .factors
            .iter()
            .filter_map(|s| match s {
                crate::exactalg::ring::Scalar::Int(x) if !x.is_one() => Some(x.clone()),
                _ => None,
            })
            .collect();
        FinAbGroup {
            free_rank: free,
            invariants,
        }
    }

    /// Cokernel structure of an integer matrix with `ambient` generators:
    /// `Z^ambient / columns`.
    pub fn from_cokernel(snf: &SmithForm, ambient: usize) -> Self {
        let factors: Vec<BigInt> = snf
            .factors
            .iter()
            .map(|s| match s {
                crate::exactalg::ring::Scalar::Int(x) => x.clone(),
                _ => panic!("integer Smith form expected"),
            })
            .collect();
        FinAbGroup::from_factors(ambient - snf.rank, factors)
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariants(&self) -> &[BigInt] {
        &self.invariants
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariants.is_empty()
    }

    /// Group order; `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank > 0 {
            return None;
        }
        Some(
            self.invariants
                .iter()
                .fold(BigInt::one(), |acc, d| acc * d),
        )
    }

    /// The p-primary component (free rank is dropped: the p-part of `Z`
    /// in the finite sense is trivial).
    pub fn p_primary(&self, p: u64) -> FinAbGroup {
        let factors = self
            .invariants
            .iter()
            .map(|d| BigInt::from(p).pow(v_p(d, p) as u32))
            .collect();
        FinAbGroup::from_factors(0, factors)
    }

    pub fn direct_sum(&self, other: &FinAbGroup) -> FinAbGroup {
        let mut factors = self.invariants.clone();
        factors.extend_from_slice(&other.invariants);
        FinAbGroup::from_factors(self.free_rank + other.free_rank, factors)
    }

    /// `G (x) Z/n`: invariant factors `gcd(d_i, n)`, free generators
    /// becoming `Z/n`.
    pub fn tensor_cyclic(&self, n: &BigInt) -> FinAbGroup {
        use num_integer::Integer;
        let mut factors: Vec<BigInt> = self
            .invariants
            .iter()
            .map(|d| d.gcd(n))
            .collect();
        for _ in 0..self.free_rank {
            factors.push(n.abs());
        }
        FinAbGroup::from_factors(0, factors)
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.invariants {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonicalization_merges_coprime_factors() {
        // Z/2 + Z/3 = Z/6
        let g = FinAbGroup::from_factors(0, vec![2.into(), 3.into()]);
        assert_eq!(g, FinAbGroup::cyclic(6));
        // Z/4 + Z/6 = Z/2 + Z/12
        let g = FinAbGroup::from_factors(0, vec![4.into(), 6.into()]);
        assert_eq!(
            g.invariants(),
            &[BigInt::from(2), BigInt::from(12)]
        );
    }

    #[test]
    fn ones_drop_zeros_are_free() {
        let g = FinAbGroup::from_factors(1, vec![1.into(), 0.into(), 5.into()]);
        assert_eq!(g.free_rank(), 2);
        assert_eq!(g.invariants(), &[BigInt::from(5)]);
        assert_eq!(g.order(), None);
    }

    #[test]
    fn p_primary_part() {
        let g = FinAbGroup::from_factors(0, vec![12.into(), 72.into()]);
        assert_eq!(
            g.p_primary(2),
            FinAbGroup::from_factors(0, vec![4.into(), 8.into()])
        );
        assert_eq!(
            g.p_primary(3),
            FinAbGroup::from_factors(0, vec![3.into(), 9.into()])
        );
        assert_eq!(g.p_primary(5), FinAbGroup::trivial());
    }

    #[test]
    fn tensor_with_cyclic() {
        let g = FinAbGroup::free(2);
        assert_eq!(
            g.tensor_cyclic(&BigInt::from(4)),
            FinAbGroup::from_factors(0, vec![4.into(), 4.into()])
        );
    }

    #[test]
    fn display_forms() {
        assert_eq!(FinAbGroup::trivial().to_string(), "0");
        let g = FinAbGroup::from_factors(1, vec![2.into(), 4.into()]);
        assert_eq!(g.to_string(), "Z + Z/2 + Z/4");
    }
}
