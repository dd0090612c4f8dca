//! Reduced bivariate elements of the tensor square
//! `A (x)_R A = R[pi1, pi2]/(f(pi1), f(pi2))`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::exactalg::eisenstein::EisensteinDatum;
use crate::exactalg::ring::{GroundRing, Scalar};

/// Coefficient grid `a_{ij}` for `pi1^i pi2^j` with `0 <= i, j < e`,
/// always reduced modulo both `f(pi1)` and `f(pi2)` and mod `p^N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivarElem {
    pub datum: Arc<EisensteinDatum>,
    /// `grid[i][j]` is the coefficient of `pi1^i pi2^j`.
    pub grid: Vec<Vec<BigInt>>,
}

/// Reduce a raw coefficient grid (any size, `raw[i][j]` on `pi1^i pi2^j`)
/// into the canonical `e x e` representation. Reduction is applied one
/// variable at a time and is a ring homomorphism.
pub fn bivar_reduce(datum: &Arc<EisensteinDatum>, raw: &[Vec<BigInt>]) -> BivarElem {
    let e = datum.e();
    let width = raw.iter().map(Vec::len).max().unwrap_or(0).max(e);
    // reduce in pi1: each column (fixed j) is a univariate poly in pi1
    let rows = raw.len().max(e);
    let mut cols_reduced: Vec<Vec<BigInt>> = Vec::with_capacity(width);
    for j in 0..width {
        let col: Vec<BigInt> = (0..rows)
            .map(|i| {
                raw.get(i)
                    .and_then(|r| r.get(j))
                    .cloned()
                    .unwrap_or_else(BigInt::zero)
            })
            .collect();
        cols_reduced.push(datum.reduce_mod_f(&col));
    }
    // reduce in pi2: each row is now a univariate poly in pi2
    let mut grid = vec![vec![BigInt::zero(); e]; e];
    let m = datum.modulus();
    for i in 0..e {
        let row: Vec<BigInt> = (0..width).map(|j| cols_reduced[j][i].clone()).collect();
        let red = datum.reduce_mod_f(&row);
        for (j, v) in red.into_iter().enumerate() {
            grid[i][j] = v.mod_floor(&m);
        }
    }
    BivarElem {
        datum: datum.clone(),
        grid,
    }
}

impl BivarElem {
    pub fn zero(datum: &Arc<EisensteinDatum>) -> Self {
        let e = datum.e();
        BivarElem {
            datum: datum.clone(),
            grid: vec![vec![BigInt::zero(); e]; e],
        }
    }

    pub fn monomial(datum: &Arc<EisensteinDatum>, i: usize, j: usize, c: BigInt) -> Self {
        let mut raw = vec![vec![BigInt::zero(); j + 1]; i + 1];
        raw[i][j] = c;
        bivar_reduce(datum, &raw)
    }

    /// Embed a univariate polynomial in the first or second variable.
    pub fn from_univariate(datum: &Arc<EisensteinDatum>, coeffs: &[BigInt], first: bool) -> Self {
        let raw: Vec<Vec<BigInt>> = if first {
            coeffs.iter().map(|c| vec![c.clone()]).collect()
        } else {
            vec![coeffs.to_vec()]
        };
        bivar_reduce(datum, &raw)
    }

    pub fn is_zero(&self) -> bool {
        self.grid.iter().flatten().all(BigInt::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let m = self.datum.modulus();
        let e = self.datum.e();
        let mut grid = self.grid.clone();
        for (row, other_row) in grid.iter_mut().zip(&other.grid).take(e) {
            for (c, oc) in row.iter_mut().zip(other_row) {
                *c = (&*c + oc).mod_floor(&m);
            }
        }
        BivarElem {
            datum: self.datum.clone(),
            grid,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let m = self.datum.modulus();
        BivarElem {
            datum: self.datum.clone(),
            grid: self
                .grid
                .iter()
                .map(|r| r.iter().map(|c| (-c).mod_floor(&m)).collect())
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let e = self.datum.e();
        let mut raw = vec![vec![BigInt::zero(); 2 * e - 1]; 2 * e - 1];
        for i in 0..e {
            for j in 0..e {
                if self.grid[i][j].is_zero() {
                    continue;
                }
                for k in 0..e {
                    for l in 0..e {
                        if other.grid[k][l].is_zero() {
                            continue;
                        }
                        raw[i + k][j + l] += &self.grid[i][j] * &other.grid[k][l];
                    }
                }
            }
        }
        bivar_reduce(&self.datum, &raw)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let m = self.datum.modulus();
        BivarElem {
            datum: self.datum.clone(),
            grid: self
                .grid
                .iter()
                .map(|r| r.iter().map(|x| (x * c).mod_floor(&m)).collect())
                .collect(),
        }
    }

    /// Flatten to `e^2` coordinates over `Z/p^N`, index `i*e + j`.
    pub fn flatten(&self, ring: &GroundRing) -> Vec<Scalar> {
        let e = self.datum.e();
        let mut out = Vec::with_capacity(e * e);
        for i in 0..e {
            for j in 0..e {
                out.push(ring.from_bigint(self.grid[i][j].clone()));
            }
        }
        out
    }

    pub fn from_flat(datum: &Arc<EisensteinDatum>, v: &[BigInt]) -> Self {
        let e = datum.e();
        assert_eq!(v.len(), e * e);
        let m = datum.modulus();
        let grid = (0..e)
            .map(|i| (0..e).map(|j| v[i * e + j].mod_floor(&m)).collect())
            .collect();
        BivarElem {
            datum: datum.clone(),
            grid,
        }
    }

    /// Substitute `pi1 = pi2 = pi`: the image in `A`, as coefficients of
    /// `1, pi, ..., pi^{e-1}`.
    pub fn substitute_diagonal(&self) -> Vec<BigInt> {
        let e = self.datum.e();
        let mut raw = vec![BigInt::zero(); 2 * e - 1];
        for i in 0..e {
            for j in 0..e {
                raw[i + j] += &self.grid[i][j];
            }
        }
        self.datum.reduce_mod_f(&raw)
    }

    /// The class of an element of the ideal `I` in `Omega^1 = I/I^2`,
    /// expressed in the coordinate `a(pi)` of `a(pi) d(pi)`: for
    /// `w(pi1, pi2)` vanishing on the diagonal this is
    /// `(d/d pi1) w (pi, pi)`.
    pub fn omega_coordinate(&self) -> Vec<BigInt> {
        let e = self.datum.e();
        let mut raw = vec![BigInt::zero(); 2 * e.max(2) - 2];
        for i in 1..e {
            for j in 0..e {
                if !self.grid[i][j].is_zero() {
                    raw[i - 1 + j] += BigInt::from(i as u64) * &self.grid[i][j];
                }
            }
        }
        self.datum.reduce_mod_f(&raw)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn datum_x2_minus_2() -> Arc<EisensteinDatum> {
        Arc::new(EisensteinDatum::new(2, 16, 2, vec![BigInt::zero()], BigInt::one()).unwrap())
    }

    fn datum_x3_minus_2() -> Arc<EisensteinDatum> {
        Arc::new(EisensteinDatum::new(2, 16, 3, vec![BigInt::zero(); 2], BigInt::one()).unwrap())
    }

    #[test]
    fn pi1_squared_reduces_to_two() {
        let d = datum_x2_minus_2();
        let e = BivarElem::monomial(&d, 2, 0, BigInt::one());
        let expected = BivarElem::monomial(&d, 0, 0, BigInt::from(2));
        assert_eq!(e, expected);
    }

    #[test]
    fn f_of_pi1_minus_f_of_pi2_is_zero() {
        for d in [datum_x2_minus_2(), datum_x3_minus_2()] {
            let f = d.f_coeffs();
            let a = BivarElem::from_univariate(&d, &f, true);
            let b = BivarElem::from_univariate(&d, &f, false);
            assert!(a.sub(&b).is_zero());
            assert!(a.is_zero(), "f(pi1) itself reduces to zero");
        }
    }

    #[test]
    fn cubes_cancel_for_x3_minus_2() {
        let d = datum_x3_minus_2();
        let a = BivarElem::monomial(&d, 3, 0, BigInt::one());
        let b = BivarElem::monomial(&d, 0, 3, BigInt::one());
        assert!(a.sub(&b).is_zero());
    }

    #[test]
    fn reduction_is_multiplicative() {
        let d = datum_x3_minus_2();
        let a = BivarElem::monomial(&d, 2, 1, BigInt::from(3));
        let b = BivarElem::monomial(&d, 1, 2, BigInt::from(5));
        let ab = a.mul(&b);
        let direct = BivarElem::monomial(&d, 3, 3, BigInt::from(15));
        assert_eq!(ab, direct);
    }

    #[test]
    fn omega_coordinate_of_d_pi() {
        // d(pi) = pi1 - pi2 has coordinate 1
        let d = datum_x2_minus_2();
        let dpi = BivarElem::monomial(&d, 1, 0, BigInt::one())
            .sub(&BivarElem::monomial(&d, 0, 1, BigInt::one()));
        let c = dpi.omega_coordinate();
        assert_eq!(c[0], BigInt::one());
        assert!(c[1].is_zero());
    }
}
