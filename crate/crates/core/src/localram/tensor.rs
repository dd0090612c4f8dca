//! The tensor square `A (x)_R A` of a totally ramified extension and the
//! multiplication ideal `I`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exactalg::bivar::BivarElem;
use crate::exactalg::eisenstein::EisensteinDatum;
use crate::exactalg::matrix::Matrix;
use crate::exactalg::ring::{GroundRing, Scalar};
use crate::exactalg::smith::{kernel_basis, solve_columns};

/// `A (x)_R A = R[pi1, pi2]/(f(pi1), f(pi2))` with its multiplication
/// map to `A`, as matrices over `R = Z/p^N`. Coordinates on the source
/// are `pi1^i pi2^j` at index `i*e + j`; on the target, powers of `pi`.
#[derive(Clone, Debug)]
pub struct TensorSquare {
    pub datum: Arc<EisensteinDatum>,
    pub ring: GroundRing,
    /// `e x e^2` matrix of the multiplication map.
    pub mult_matrix: Matrix,
    /// `e^2 x e^2` action of `pi1` and `pi2` on the tensor square.
    pub pi1_action: Matrix,
    pub pi2_action: Matrix,
}

/// The kernel `I` of multiplication, with the actions of `pi1`, `pi2`
/// transported to its `R`-basis.
#[derive(Clone, Debug)]
pub struct IdealI {
    /// `e^2 x m` basis of the kernel, `m = e^2 - e`.
    pub basis: Matrix,
    pub pi1_on_i: Matrix,
    pub pi2_on_i: Matrix,
}

impl TensorSquare {
    pub fn rank(&self) -> usize {
        self.datum.e() * self.datum.e()
    }

    /// Flat coordinates of a reduced bivariate element.
    pub fn flatten(&self, v: &BivarElem) -> Vec<Scalar> {
        v.flatten(&self.ring)
    }

    /// The ideal `I = ker(A (x)_R A -> A)` with its uniformizer actions.
    pub fn ideal(&self) -> Result<IdealI> {
        let e = self.datum.e();
        let basis = kernel_basis(&self.mult_matrix)?;
        if basis.cols != e * e - e {
            return Err(Error::MismatchFailure(format!(
                "kernel of multiplication has rank {} (expected {})",
                basis.cols,
                e * e - e
            )));
        }
        let act = |action: &Matrix| -> Result<Matrix> {
            let image = action.mul(&basis);
            solve_columns(&basis, &image)?.ok_or_else(|| {
                Error::MismatchFailure("I is not stable under the uniformizer action".into())
            })
        };
        let pi1_on_i = act(&self.pi1_action)?;
        let pi2_on_i = act(&self.pi2_action)?;
        Ok(IdealI {
            basis,
            pi1_on_i,
            pi2_on_i,
        })
    }

    /// Membership of a bivariate element in `I` (kills multiplication).
    pub fn in_ideal(&self, v: &BivarElem) -> bool {
        let flat = Matrix::from_columns(self.ring.clone(), self.rank(), &[self.flatten(v)]);
        self.mult_matrix.mul(&flat).is_zero()
    }

    /// Coordinates of an ideal element on the kernel basis.
    pub fn ideal_coordinates(&self, ideal: &IdealI, v: &BivarElem) -> Result<Vec<Scalar>> {
        let flat = Matrix::from_columns(self.ring.clone(), self.rank(), &[self.flatten(v)]);
        let sol = solve_columns(&ideal.basis, &flat)?
            .ok_or_else(|| Error::MismatchFailure("element is not in the ideal".into()))?;
        Ok(sol.column(0))
    }
}

/// Assemble the tensor square of an Eisenstein datum.
pub fn build_tensor_square(datum: &Arc<EisensteinDatum>) -> TensorSquare {
    let e = datum.e();
    let ring = GroundRing::truncated_padic(datum.p, datum.precision);
    // multiplication: pi1^i pi2^j -> pi^{i+j} reduced mod f
    let mut mult_cols = Vec::with_capacity(e * e);
    let mut pi1_cols = Vec::with_capacity(e * e);
    let mut pi2_cols = Vec::with_capacity(e * e);
    for i in 0..e {
        for j in 0..e {
            let mut raw = vec![BigInt::from(0); i + j + 1];
            raw[i + j] = BigInt::one();
            let reduced = datum.reduce_mod_f(&raw);
            mult_cols.push(
                reduced
                    .iter()
                    .map(|c| ring.from_bigint(c.clone()))
                    .collect::<Vec<_>>(),
            );
            let m1 = BivarElem::monomial(datum, i + 1, j, BigInt::one());
            pi1_cols.push(m1.flatten(&ring));
            let m2 = BivarElem::monomial(datum, i, j + 1, BigInt::one());
            pi2_cols.push(m2.flatten(&ring));
        }
    }
    TensorSquare {
        datum: datum.clone(),
        ring: ring.clone(),
        mult_matrix: Matrix::from_columns(ring.clone(), e, &mult_cols),
        pi1_action: Matrix::from_columns(ring.clone(), e * e, &pi1_cols),
        pi2_action: Matrix::from_columns(ring, e * e, &pi2_cols),
    }
}

/// `d(pi) = pi1 - pi2`.
pub fn d_pi(datum: &Arc<EisensteinDatum>) -> BivarElem {
    BivarElem::monomial(datum, 1, 0, BigInt::one())
        .sub(&BivarElem::monomial(datum, 0, 1, BigInt::one()))
}

/// Matrix over `R` of multiplication by an element of `A` (coefficients
/// in powers of `pi`).
pub fn a_mult_matrix(datum: &Arc<EisensteinDatum>, ring: &GroundRing, elem: &[BigInt]) -> Matrix {
    let e = datum.e();
    let mut cols = Vec::with_capacity(e);
    let mut cur = datum.reduce_mod_f(elem);
    for j in 0..e {
        if j > 0 {
            let mut shifted = vec![BigInt::from(0)];
            shifted.extend(cur.iter().cloned());
            cur = datum.reduce_mod_f(&shifted);
        }
        cols.push(
            cur.iter()
                .map(|c| ring.from_bigint(c.clone()))
                .collect::<Vec<_>>(),
        );
    }
    Matrix::from_columns(ring.clone(), e, &cols)
}
