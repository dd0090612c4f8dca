//! Benchmark fixtures shared by the criterion targets.

use ramforge_core::exactalg::{GroundRing, Matrix};

/// A dense integer test matrix with entries spread over `[-9, 9]`.
pub fn integer_matrix(n: usize) -> Matrix {
    let ring = GroundRing::Integers;
    Matrix::from_fn(ring.clone(), n, n, |i, j| {
        let v = ((i * 7 + j * 13 + 3) % 19) as i64 - 9;
        ring.from_i64(v)
    })
}
