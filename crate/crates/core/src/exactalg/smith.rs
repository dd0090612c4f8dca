//! Smith and Hermite normal forms, kernels, and exact linear solving.
//!
//! Over `Integers` the algorithms are exact. Over truncated rings the
//! matrices are reductions of exact objects over `Z_p` (or a totally
//! ramified extension), and the computation certifies its own validity:
//! every pivot valuation must stay strictly below the precision guard,
//! and residues that are zero to full precision are treated as exact
//! zeros of the underlying object. Kernels over truncated rings are the
//! reductions of the kernels of the underlying maps; the torsion
//! pseudo-kernels of the finite model (multiples of `pi^{N-v}`) are
//! truncation artifacts and are never returned.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactalg::matrix::{int_abs, Matrix};
use crate::exactalg::ring::{GroundRing, Scalar};

/// Diagonalization `U * M * V = diag(factors)` with invertible transforms
/// and the divisibility chain `d_i | d_{i+1}`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub ring: GroundRing,
    /// The nonzero invariant factors, in divisibility order.
    pub factors: Vec<Scalar>,
    pub left: Matrix,
    pub right: Matrix,
    pub rank: usize,
}

impl SmithForm {
    /// The diagonal matrix `U M V` for verification.
    pub fn diagonal(&self, rows: usize, cols: usize) -> Matrix {
        let mut d = Matrix::zero(self.ring.clone(), rows, cols);
        for (i, f) in self.factors.iter().enumerate() {
            d.set(i, i, f.clone());
        }
        d
    }

    /// Valuations of the invariant factors (local rings only).
    pub fn factor_valuations(&self) -> Vec<u64> {
        self.factors
            .iter()
            .map(|f| self.ring.valuation(f).expect("nonzero invariant factor"))
            .collect()
    }
}

/// Smith normal form over the integers.
pub fn smith_normal_form(m: &Matrix) -> Result<SmithForm> {
    if m.ring != GroundRing::Integers {
        return Err(Error::InvalidInput(
            "smith_normal_form expects an integer matrix".into(),
        ));
    }
    Ok(smith_integer(m))
}

/// Smith normal form over a truncated local ring, by minimal-valuation
/// pivoting. Invariant factors are powers of the uniformizer.
pub fn dvr_smith_form(m: &Matrix) -> Result<SmithForm> {
    if !m.ring.is_local() {
        return Err(Error::InvalidInput(
            "dvr_smith_form expects a truncated or prime-field matrix".into(),
        ));
    }
    smith_local(m)
}

/// Ring-dispatched normal form used by the homology engine.
pub fn smith_form(m: &Matrix) -> Result<SmithForm> {
    match m.ring {
        GroundRing::Integers => Ok(smith_integer(m)),
        _ => smith_local(m),
    }
}

fn smith_integer(m: &Matrix) -> SmithForm {
    let ring = GroundRing::Integers;
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut u = Matrix::identity(ring.clone(), rows);
    let mut v = Matrix::identity(ring.clone(), cols);
    let mut t = 0usize;

    while t < rows.min(cols) {
        // pivot: minimal absolute value, ties lowest row then column
        let mut pivot: Option<(BigInt, usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if ring.is_zero(a.get(i, j)) {
                    continue;
                }
                let size = int_abs(a.get(i, j));
                let better = match &pivot {
                    None => true,
                    Some((s, _, _)) => size < *s,
                };
                if better {
                    pivot = Some((size, i, j));
                }
            }
        }
        let Some((_, pi, pj)) = pivot else { break };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);

        'reduce: loop {
            // clear column t below the pivot
            for i in t + 1..rows {
                if ring.is_zero(a.get(i, t)) {
                    continue;
                }
                let q = nearest_div(a.get(i, t), a.get(t, t));
                let c = ring.neg(&q);
                a.add_multiple_of_row(i, t, &c);
                u.add_multiple_of_row(i, t, &c);
                if !ring.is_zero(a.get(i, t)) {
                    // remainder strictly smaller: promote it to pivot
                    a.swap_rows(t, i);
                    u.swap_rows(t, i);
                    continue 'reduce;
                }
            }
            // clear row t right of the pivot
            for j in t + 1..cols {
                if ring.is_zero(a.get(t, j)) {
                    continue;
                }
                let q = nearest_div(a.get(t, j), a.get(t, t));
                let c = ring.neg(&q);
                a.add_multiple_of_col(j, t, &c);
                v.add_multiple_of_col(j, t, &c);
                if !ring.is_zero(a.get(t, j)) {
                    a.swap_cols(t, j);
                    v.swap_cols(t, j);
                    continue 'reduce;
                }
            }
            // divisibility: the pivot must divide the remaining block
            for i in t + 1..rows {
                for j in t + 1..cols {
                    if ring.is_zero(a.get(i, j)) {
                        continue;
                    }
                    let (_, rem) = int_of(a.get(i, j)).div_rem(int_of(a.get(t, t)));
                    if !rem.is_zero() {
                        let one = ring.one();
                        a.add_multiple_of_row(t, i, &one);
                        u.add_multiple_of_row(t, i, &one);
                        continue 'reduce;
                    }
                }
            }
            break;
        }
        t += 1;
    }

    let rank = t;
    let mut factors = Vec::with_capacity(rank);
    for i in 0..rank {
        if int_of(a.get(i, i)).is_negative() {
            let minus_one = ring.from_i64(-1);
            a.scale_row(i, &minus_one);
            u.scale_row(i, &minus_one);
        }
        factors.push(a.get(i, i).clone());
    }
    SmithForm {
        ring,
        factors,
        left: u,
        right: v,
        rank,
    }
}

fn smith_local(m: &Matrix) -> Result<SmithForm> {
    let ring = m.ring.clone();
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut u = Matrix::identity(ring.clone(), rows);
    let mut v = Matrix::identity(ring.clone(), cols);
    let mut t = 0usize;
    let mut valuations = Vec::new();
    // Minimal-valuation pivoting keeps the working matrix exact: a
    // clearing multiplier is off by pi^{eff - v} junk, but every entry
    // of the pivot row/column has valuation at least v, so the product
    // lands above the effective precision. Only the transforms degrade,
    // by the largest pivot valuation.
    let mut transform_loss = 0u64;
    let guard_units = guard_width(&ring);
    a.lost = m.lost;
    let eff = a.effective_precision();

    while t < rows.min(cols) {
        // minimal-valuation pivot; ties broken lowest row, then column;
        // entries at or above effective precision are zero
        let mut pivot: Option<(u64, usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if let Some(val) = a.effective_valuation(a.get(i, j)) {
                    let better = match pivot {
                        None => true,
                        Some((bv, _, _)) => val < bv,
                    };
                    if better {
                        pivot = Some((val, i, j));
                    }
                }
            }
        }
        let Some((val, pi, pj)) = pivot else { break };
        if let (Some(g), Some(eff)) = (guard_units, eff) {
            if val as i128 >= eff - g as i128 {
                return Err(Error::PrecisionExhausted(format!(
                    "pivot valuation {val} reaches the guard zone (effective precision {eff})"
                )));
            }
        }
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);

        // normalize the pivot to an exact uniformizer power
        let pivot_scalar = a.get(t, t).clone();
        let target = ring.uniformizer_pow(val);
        let unit = ring.div_exact(&pivot_scalar, &target)?;
        let unit_inv = ring.inverse(&unit)?;
        a.scale_row(t, &unit_inv);
        u.scale_row(t, &unit_inv);

        // clear column, then row; all other entries have valuation >= val
        for i in t + 1..rows {
            if a.entry_effectively_zero(a.get(i, t)) {
                let z = ring.zero();
                a.set(i, t, z);
                continue;
            }
            let q = ring.div_exact(a.get(i, t), &target)?;
            let c = ring.neg(&q);
            a.add_multiple_of_row(i, t, &c);
            u.add_multiple_of_row(i, t, &c);
            debug_assert!(ring.is_zero(a.get(i, t)));
        }
        for j in t + 1..cols {
            if a.entry_effectively_zero(a.get(t, j)) {
                let z = ring.zero();
                a.set(t, j, z);
                continue;
            }
            let q = ring.div_exact(a.get(t, j), &target)?;
            let c = ring.neg(&q);
            a.add_multiple_of_col(j, t, &c);
            v.add_multiple_of_col(j, t, &c);
            debug_assert!(ring.is_zero(a.get(t, j)));
        }
        transform_loss = transform_loss.max(val);
        valuations.push(val);
        t += 1;
    }

    let rank = t;
    let factors = valuations
        .iter()
        .map(|&v| ring.uniformizer_pow(v))
        .collect();
    let lost = m.lost + transform_loss;
    Ok(SmithForm {
        ring,
        factors,
        left: u.with_lost(lost),
        right: v.with_lost(lost),
        rank,
    })
}

fn guard_width(ring: &GroundRing) -> Option<u64> {
    match ring {
        GroundRing::Integers | GroundRing::PrimeField(_) => None,
        GroundRing::TruncatedPadic { .. } => Some(crate::exactalg::ring::PRECISION_GUARD as u64),
        GroundRing::TruncatedDvr(d) => {
            Some(d.e() as u64 * crate::exactalg::ring::PRECISION_GUARD as u64)
        }
    }
}

/// Columns generating the kernel of `m` over its ground ring. Over
/// `Integers` the result is a Hermite-reduced lattice basis with positive
/// pivots; over truncated rings it is the reduction of the kernel of the
/// underlying exact map.
pub fn kernel_basis(m: &Matrix) -> Result<Matrix> {
    if m.rows == 0 {
        return Ok(Matrix::identity(m.ring.clone(), m.cols));
    }
    let snf = smith_form(m)?;
    let cols: Vec<usize> = (snf.rank..m.cols).collect();
    let k = snf.right.submatrix_cols(&cols);
    if m.ring == GroundRing::Integers && k.cols > 0 {
        Ok(hnf_columns(&k).0)
    } else {
        Ok(k)
    }
}

/// Column-style Hermite normal form: returns `(H, U)` with `M U = H`,
/// `U` unimodular, pivots positive, entries left of each pivot reduced
/// into `[0, pivot)`. Zero columns are trimmed from `H`.
pub fn hnf_columns(m: &Matrix) -> (Matrix, Matrix) {
    let ring = GroundRing::Integers;
    assert_eq!(m.ring, ring);
    let mut h = m.clone();
    let mut u = Matrix::identity(ring.clone(), m.cols);
    let mut c = 0usize;
    for r in 0..m.rows {
        if c >= m.cols {
            break;
        }
        if (c..m.cols).all(|j| ring.is_zero(h.get(r, j))) {
            continue;
        }
        loop {
            // smallest nonzero entry of row r among columns c..
            let mut best: Option<(BigInt, usize)> = None;
            for j in c..m.cols {
                if ring.is_zero(h.get(r, j)) {
                    continue;
                }
                let size = int_abs(h.get(r, j));
                if best.as_ref().is_none_or(|(s, _)| size < *s) {
                    best = Some((size, j));
                }
            }
            let (_, jmin) = best.expect("nonzero entry exists");
            h.swap_cols(c, jmin);
            u.swap_cols(c, jmin);
            let mut done = true;
            for j in c + 1..m.cols {
                if ring.is_zero(h.get(r, j)) {
                    continue;
                }
                let q = nearest_div(h.get(r, j), h.get(r, c));
                let coef = ring.neg(&q);
                h.add_multiple_of_col(j, c, &coef);
                u.add_multiple_of_col(j, c, &coef);
                if !ring.is_zero(h.get(r, j)) {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if int_of(h.get(r, c)).is_negative() {
            let minus_one = ring.from_i64(-1);
            h.scale_col(c, &minus_one);
            u.scale_col(c, &minus_one);
        }
        // reduce earlier columns in the pivot row
        let pivot = int_of(h.get(r, c)).clone();
        for j in 0..c {
            let q = int_of(h.get(r, j)).div_floor(&pivot);
            if !q.is_zero() {
                let coef = Scalar::Int(-q);
                h.add_multiple_of_col(j, c, &coef);
                u.add_multiple_of_col(j, c, &coef);
            }
        }
        c += 1;
    }
    let keep: Vec<usize> = (0..c).collect();
    (h.submatrix_cols(&keep), u)
}

/// Solve `M X = B` exactly (to effective precision); `None` when no
/// solution exists in the ring.
pub fn solve_columns(m: &Matrix, b: &Matrix) -> Result<Option<Matrix>> {
    assert_eq!(m.rows, b.rows, "shape mismatch in solve");
    assert_eq!(m.ring, b.ring, "ring mismatch in solve");
    let ring = m.ring.clone();
    if m.cols == 0 {
        return Ok(if b.is_effectively_zero() {
            Some(Matrix::zero(ring, 0, b.cols))
        } else {
            None
        });
    }
    let snf = smith_form(m)?;
    let c = snf.left.mul(b);
    let mut y = Matrix::zero(ring.clone(), m.cols, b.cols);
    let mut div_loss = 0u64;
    for col in 0..b.cols {
        for i in 0..m.rows {
            let ci = c.get(i, col);
            if i < snf.rank {
                if ring.is_zero(ci) {
                    continue;
                }
                let d = &snf.factors[i];
                // divisibility check, then exact division
                match ring {
                    GroundRing::Integers => {
                        let (q, r) = int_of(ci).div_rem(int_of(d));
                        if !r.is_zero() {
                            return Ok(None);
                        }
                        y.set(i, col, Scalar::Int(q));
                    }
                    _ => {
                        let vd = ring.valuation(d).expect("nonzero factor");
                        match c.effective_valuation(ci) {
                            Some(vc) if vc >= vd => {
                                y.set(i, col, ring.div_exact(ci, d)?);
                                div_loss = div_loss.max(vd);
                            }
                            Some(_) => return Ok(None),
                            // indistinguishable from zero: solve with 0
                            None => continue,
                        }
                    }
                }
            } else if !c.entry_effectively_zero(ci) {
                return Ok(None);
            }
        }
    }
    y.lost = c.lost + div_loss;
    Ok(Some(snf.right.mul(&y)))
}

fn nearest_div(a: &Scalar, b: &Scalar) -> Scalar {
    // rounded division minimizing |remainder|
    let (a, b) = (int_of(a), int_of(b));
    let (mut q, r) = a.div_rem(b);
    let two_r = BigInt::from(2) * r.abs();
    if two_r > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q += 1;
        } else {
            q -= 1;
        }
    }
    Scalar::Int(q)
}

fn int_of(s: &Scalar) -> &BigInt {
    match s {
        Scalar::Int(x) => x,
        _ => panic!("expected integer scalar"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::eisenstein::EisensteinDatum;
    use num_traits::One;

    fn z() -> GroundRing {
        GroundRing::Integers
    }

    fn check_snf_consistency(m: &Matrix, snf: &SmithForm) {
        let d = snf.left.mul(m).mul(&snf.right);
        assert_eq!(d, snf.diagonal(m.rows, m.cols), "U M V is diagonal");
        for w in snf.factors.windows(2) {
            let (a, b) = (int_of(&w[0]), int_of(&w[1]));
            assert!((b % a).is_zero(), "divisibility chain");
        }
        assert!(int_abs(&Scalar::Int(snf.left.determinant())).is_one());
        assert!(int_abs(&Scalar::Int(snf.right.determinant())).is_one());
    }

    #[test]
    fn snf_zero_matrix() {
        let m = Matrix::zero(z(), 1, 1);
        let snf = smith_normal_form(&m).unwrap();
        assert_eq!(snf.rank, 0);
        assert!(snf.factors.is_empty());
    }

    #[test]
    fn snf_identity() {
        let m = Matrix::identity(z(), 2);
        let snf = smith_normal_form(&m).unwrap();
        assert_eq!(snf.rank, 2);
        assert_eq!(snf.factors, vec![z().from_i64(1), z().from_i64(1)]);
    }

    #[test]
    fn snf_diag_2_3() {
        // gcd-of-minors oracle: d1 = gcd(2,3) = 1, d1*d2 = det = 6
        let m = Matrix::from_i64_rows(z(), &[&[2, 0], &[0, 3]]);
        let snf = smith_normal_form(&m).unwrap();
        assert_eq!(snf.factors, vec![z().from_i64(1), z().from_i64(6)]);
        check_snf_consistency(&m, &snf);
    }

    #[test]
    fn snf_divisibility_fix() {
        let m = Matrix::from_i64_rows(z(), &[&[6, 0], &[0, 4]]);
        let snf = smith_normal_form(&m).unwrap();
        assert_eq!(snf.factors, vec![z().from_i64(2), z().from_i64(12)]);
        check_snf_consistency(&m, &snf);
    }

    #[test]
    fn dvr_snf_identity_and_uniformizer() {
        let r = GroundRing::truncated_padic(2, 12);
        let snf = dvr_smith_form(&Matrix::identity(r.clone(), 2)).unwrap();
        assert_eq!(snf.factor_valuations(), vec![0, 0]);

        let m = Matrix::from_fn(r.clone(), 1, 1, |_, _| r.from_i64(2));
        let snf = dvr_smith_form(&m).unwrap();
        assert_eq!(snf.factor_valuations(), vec![1]);
    }

    #[test]
    fn dvr_snf_2_8_over_z2() {
        let r = GroundRing::truncated_padic(2, 12);
        let m = Matrix::from_fn(r.clone(), 2, 2, |i, j| {
            if i == j {
                r.from_i64(if i == 0 { 2 } else { 8 })
            } else {
                r.zero()
            }
        });
        let snf = dvr_smith_form(&m).unwrap();
        assert_eq!(snf.factor_valuations(), vec![1, 3]);
        // verify U M V mod 2^12
        let d = snf.left.mul(&m).mul(&snf.right);
        assert_eq!(d, snf.diagonal(2, 2));
    }

    #[test]
    fn dvr_snf_guard_triggers() {
        let r = GroundRing::truncated_padic(2, 12);
        // valuation 9 >= 12 - 4 = 8
        let m = Matrix::from_fn(r.clone(), 1, 1, |_, _| r.from_i64(512));
        assert!(matches!(
            dvr_smith_form(&m),
            Err(Error::PrecisionExhausted(_))
        ));
    }

    #[test]
    fn kernel_of_symmetric_row() {
        let m = Matrix::from_i64_rows(z(), &[&[2, -2]]);
        let k = kernel_basis(&m).unwrap();
        assert_eq!(k.cols, 1);
        assert!(m.mul(&k).is_zero());
        // basis (1, 1) up to sign and Hermite normalization
        assert_eq!(int_abs(k.get(0, 0)), BigInt::from(1));
        assert_eq!(k.get(0, 0), k.get(1, 0));
    }

    #[test]
    fn kernel_strictness_over_truncated() {
        // ker(x2 : Z_2 -> Z_2) is 0; the truncated model must not report
        // the artifact generator 2^{N-1}
        let r = GroundRing::truncated_padic(2, 12);
        let m = Matrix::from_fn(r.clone(), 1, 1, |_, _| r.from_i64(2));
        let k = kernel_basis(&m).unwrap();
        assert_eq!(k.cols, 0);
    }

    #[test]
    fn solve_exact_integer() {
        let m = Matrix::from_i64_rows(z(), &[&[2, 0], &[0, 3]]);
        let b = Matrix::from_i64_rows(z(), &[&[4], &[9]]);
        let x = solve_columns(&m, &b).unwrap().unwrap();
        assert_eq!(m.mul(&x), b);
        let b2 = Matrix::from_i64_rows(z(), &[&[1], &[0]]);
        assert!(solve_columns(&m, &b2).unwrap().is_none());
    }

    #[test]
    fn solve_over_dvr() {
        // pi * x = p  =>  x = pi^{e-1} * unit-ish; check by multiplying back
        let d = EisensteinDatum::new(2, 16, 2, vec![BigInt::zero()], BigInt::from(1)).unwrap();
        let r = GroundRing::truncated_dvr(d);
        let m = Matrix::from_fn(r.clone(), 1, 1, |_, _| r.uniformizer_pow(1));
        let b = Matrix::from_fn(r.clone(), 1, 1, |_, _| r.from_i64(2));
        let x = solve_columns(&m, &b).unwrap().unwrap();
        assert_eq!(m.mul(&x), b);
    }

    #[test]
    fn hnf_canonical_positive_pivots() {
        let m = Matrix::from_i64_rows(z(), &[&[4, 2], &[0, -2]]);
        let (h, u) = hnf_columns(&m);
        assert_eq!(m.mul(&u).submatrix_cols(&[0, 1]), h);
        assert!(!int_of(h.get(0, 0)).is_negative());
        // lattice spanned by (4,0),(2,-2): HNF pivots 2, 2
        assert_eq!(int_of(h.get(0, 0)), &BigInt::from(2));
    }
}
