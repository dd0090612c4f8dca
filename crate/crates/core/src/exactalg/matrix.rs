//! Dense matrices over a single ground ring, with effective-precision
//! bookkeeping.
//!
//! Over a truncated ring, eliminations that divide by a non-unit pivot
//! produce transforms whose top digits are representative-dependent.
//! Each matrix therefore carries `lost`, the number of uniformizer
//! digits at the top that are no longer meaningful; valuations at or
//! above `precision - lost` denote entries indistinguishable from zero.
//! Exact matrices have `lost = 0`, and the field is ignored by equality.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::exactalg::ring::{GroundRing, Scalar};

#[derive(Clone, Debug, Eq)]
pub struct Matrix {
    pub ring: GroundRing,
    pub rows: usize,
    pub cols: usize,
    /// Uniformizer digits of precision consumed by divisions that
    /// produced this matrix.
    pub lost: u64,
    data: Vec<Scalar>,
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring
            && self.rows == other.rows
            && self.cols == other.cols
            && self.data == other.data
    }
}

impl Matrix {
    pub fn zero(ring: GroundRing, rows: usize, cols: usize) -> Self {
        let data = vec![ring.zero(); rows * cols];
        Matrix {
            ring,
            rows,
            cols,
            lost: 0,
            data,
        }
    }

    pub fn identity(ring: GroundRing, n: usize) -> Self {
        let mut m = Matrix::zero(ring, n, n);
        for i in 0..n {
            let one = m.ring.one();
            m.set(i, i, one);
        }
        m
    }

    pub fn from_fn(
        ring: GroundRing,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix {
            ring,
            rows,
            cols,
            lost: 0,
            data,
        }
    }

    pub fn with_lost(mut self, lost: u64) -> Self {
        self.lost = lost;
        self
    }

    /// Effective precision (uniformizer units) of this matrix's entries;
    /// `None` over exact rings.
    pub fn effective_precision(&self) -> Option<i128> {
        self.ring
            .precision_exponent()
            .map(|n| n as i128 - self.lost as i128)
    }

    /// Valuation clamped to effective precision: entries at or above it
    /// are indistinguishable from zero.
    pub fn effective_valuation(&self, s: &Scalar) -> Option<u64> {
        let v = self.ring.valuation(s)?;
        match self.effective_precision() {
            Some(eff) if (v as i128) >= eff => None,
            _ => Some(v),
        }
    }

    pub fn entry_effectively_zero(&self, s: &Scalar) -> bool {
        if self.ring.is_zero(s) {
            return true;
        }
        if matches!(self.ring, GroundRing::Integers) {
            return false;
        }
        self.effective_valuation(s).is_none()
    }

    /// Zero to effective precision.
    pub fn is_effectively_zero(&self) -> bool {
        self.data.iter().all(|s| self.entry_effectively_zero(s))
    }

    /// Integer matrix from row slices.
    pub fn from_i64_rows(ring: GroundRing, rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        Matrix::from_fn(ring.clone(), r, c, |i, j| ring.from_i64(rows[i][j]))
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|s| self.ring.is_zero(s))
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn from_columns(ring: GroundRing, rows: usize, cols: &[Vec<Scalar>]) -> Self {
        Matrix::from_fn(ring, rows, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.ring, other.ring, "ring mismatch");
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let ring = self.ring.clone();
        let lost = self.lost.max(other.lost);
        Matrix::from_fn(ring.clone(), self.rows, other.cols, |i, j| {
            let mut acc = ring.zero();
            for k in 0..self.cols {
                let a = self.get(i, k);
                if ring.is_zero(a) {
                    continue;
                }
                acc = ring.add(&acc, &ring.mul(a, other.get(k, j)));
            }
            acc
        })
        .with_lost(lost)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = self.ring.zero();
                for (k, vk) in v.iter().enumerate() {
                    let a = self.get(i, k);
                    if self.ring.is_zero(a) {
                        continue;
                    }
                    acc = self.ring.add(&acc, &self.ring.mul(a, vk));
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.ring.clone(), self.rows, self.cols, |i, j| {
            self.ring.add(self.get(i, j), other.get(i, j))
        })
        .with_lost(self.lost.max(other.lost))
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.ring.clone(), self.rows, self.cols, |i, j| {
            self.ring.sub(self.get(i, j), other.get(i, j))
        })
        .with_lost(self.lost.max(other.lost))
    }

    pub fn neg(&self) -> Matrix {
        Matrix::from_fn(self.ring.clone(), self.rows, self.cols, |i, j| {
            self.ring.neg(self.get(i, j))
        })
        .with_lost(self.lost)
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix::from_fn(self.ring.clone(), self.rows, self.cols, |i, j| {
            self.ring.mul(s, self.get(i, j))
        })
        .with_lost(self.lost)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.ring.clone(), self.cols, self.rows, |i, j| {
            self.get(j, i).clone()
        })
        .with_lost(self.lost)
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        assert_eq!(self.ring, other.ring);
        Matrix::from_fn(self.ring.clone(), self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
        .with_lost(self.lost.max(other.lost))
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        assert_eq!(self.ring, other.ring);
        Matrix::from_fn(self.ring.clone(), self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows {
                self.get(i, j).clone()
            } else {
                other.get(i - self.rows, j).clone()
            }
        })
        .with_lost(self.lost.max(other.lost))
    }

    /// Block diagonal `diag(self, other)`.
    pub fn block_diag(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.ring, other.ring);
        let ring = self.ring.clone();
        Matrix::from_fn(
            ring.clone(),
            self.rows + other.rows,
            self.cols + other.cols,
            |i, j| {
                if i < self.rows && j < self.cols {
                    self.get(i, j).clone()
                } else if i >= self.rows && j >= self.cols {
                    other.get(i - self.rows, j - self.cols).clone()
                } else {
                    ring.zero()
                }
            },
        )
        .with_lost(self.lost.max(other.lost))
    }

    pub fn submatrix_cols(&self, cols: &[usize]) -> Matrix {
        Matrix::from_fn(self.ring.clone(), self.rows, cols.len(), |i, j| {
            self.get(i, cols[j]).clone()
        })
        .with_lost(self.lost)
    }

    pub fn take_rows(&self, range: std::ops::Range<usize>) -> Matrix {
        Matrix::from_fn(self.ring.clone(), range.len(), self.cols, |i, j| {
            self.get(range.start + i, j).clone()
        })
        .with_lost(self.lost)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row_i += c * row_k
    pub fn add_multiple_of_row(&mut self, i: usize, k: usize, c: &Scalar) {
        for j in 0..self.cols {
            let v = self
                .ring
                .add(self.get(i, j), &self.ring.mul(c, self.get(k, j)));
            self.set(i, j, v);
        }
    }

    /// col_j += c * col_k
    pub fn add_multiple_of_col(&mut self, j: usize, k: usize, c: &Scalar) {
        for i in 0..self.rows {
            let v = self
                .ring
                .add(self.get(i, j), &self.ring.mul(c, self.get(i, k)));
            self.set(i, j, v);
        }
    }

    pub fn scale_row(&mut self, i: usize, c: &Scalar) {
        for j in 0..self.cols {
            let v = self.ring.mul(c, self.get(i, j));
            self.set(i, j, v);
        }
    }

    pub fn scale_col(&mut self, j: usize, c: &Scalar) {
        for i in 0..self.rows {
            let v = self.ring.mul(c, self.get(i, j));
            self.set(i, j, v);
        }
    }

    /// Exact determinant over `Integers` by fraction-free (Bareiss)
    /// elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.ring, GroundRing::Integers);
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match self.get(i, j) {
                        Scalar::Int(x) => x.clone(),
                        _ => unreachable!(),
                    })
                    .collect()
            })
            .collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                let swap = (k + 1..n).find(|&i| !a[i][k].is_zero());
                match swap {
                    Some(i) => {
                        a.swap(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = num / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        sign * a[n - 1][n - 1].clone()
    }

    pub fn format(&self) -> String {
        let mut s = String::new();
        for i in 0..self.rows {
            s.push('[');
            let row: Vec<String> = (0..self.cols)
                .map(|j| self.ring.format_scalar(self.get(i, j)))
                .collect();
            s.push_str(&row.join(", "));
            s.push_str("]\n");
        }
        s
    }

    pub fn entries_signed(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| match self.get(i, j) {
                        Scalar::Int(x) | Scalar::Res(x) => x.clone(),
                        Scalar::Pol(_) => panic!("entries_signed on DVR matrix"),
                    })
                    .collect()
            })
            .collect()
    }
}

/// Absolute value size used for integer pivoting.
pub fn int_abs(s: &Scalar) -> BigInt {
    match s {
        Scalar::Int(x) => x.abs(),
        _ => panic!("int_abs on non-integer scalar"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_bareiss() {
        let z = GroundRing::Integers;
        let m = Matrix::from_i64_rows(z.clone(), &[&[1, 2], &[3, 4]]);
        assert_eq!(m.determinant(), BigInt::from(-2));
        let m = Matrix::from_i64_rows(z.clone(), &[&[2, 0, 1], &[0, 3, 0], &[1, 0, 2]]);
        assert_eq!(m.determinant(), BigInt::from(9));
        let m = Matrix::from_i64_rows(z, &[&[0, 1], &[1, 0]]);
        assert_eq!(m.determinant(), BigInt::from(-1));
    }

    #[test]
    fn mul_identity() {
        let z = GroundRing::Integers;
        let m = Matrix::from_i64_rows(z.clone(), &[&[1, 2], &[3, 4]]);
        let id = Matrix::identity(z, 2);
        assert_eq!(m.mul(&id), m);
    }
}
