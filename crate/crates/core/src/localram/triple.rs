//! Fiber-sequence verification for a tower `Z in B in C` at a prime:
//! chain models of the three relative tensor-square fibers over the
//! shared residue field, connected into a long exact sequence.
//!
//! The models of `k (x)_R k` for each ring in the tower are the
//! two-term residue complexes of the local resolutions `[A --pi--> A]`;
//! the comparison multipliers (`p / pi_B`, `pi_B / pi_C`) are computed
//! exactly in the truncated extensions and reduced to `k`. The three
//! mapping fibers then sit in a cofiber sequence whose long exact
//! sequence is checked slot by slot.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactalg::matrix::Matrix;
use crate::exactalg::poly;
use crate::exactalg::ring::GroundRing;
use crate::homalg::complex::{mapping_fiber, ChainComplex, ChainMap, FiberTriple};
use crate::homalg::homology::{
    homology_data, induced_from_images, induced_map, HomologyData, HomologyResult,
};
use crate::homalg::les::exact_at;
use crate::localram::{exact_u64_div, localize, LocalFactor};
use crate::numberfield::NumberRing;

#[derive(Clone, Debug)]
pub struct TripleReport {
    pub p: u64,
    /// Ramification indices `(e_B, e_C, e_{C/B})`.
    pub indices: (u32, u32, u32),
    pub fiber_ba: HomologyResult,
    pub fiber_ca: HomologyResult,
    pub fiber_cb: HomologyResult,
    /// Labels of the verified exactness slots.
    pub slots: Vec<String>,
}

/// Check the long exact sequence of
/// `I^k_{B/Z} -> I^k_{C/Z} -> I^k_{C/B}` for a monogenic tower, given
/// the embedding of `theta_B` as a polynomial in `theta_C`.
pub fn triple_fiber_check(
    b: &NumberRing,
    c: &NumberRing,
    embed: &[BigInt],
    p: u64,
    depth: i64,
) -> Result<TripleReport> {
    // embedding sanity: f_B(embed(theta_C)) = 0 in C
    let composed = poly::compose(b.defining_poly(), embed);
    let (_, rem) = poly::divmod_monic(&composed, c.defining_poly());
    if !poly::is_zero(&rem) {
        return Err(Error::InvalidInput(
            "embedding does not satisfy the defining polynomial of the middle field".into(),
        ));
    }

    let loc_b = localize(b, p, None)?;
    let loc_c = localize(c, p, None)?;
    let fb = single_totally_ramified(&loc_b.factors, "middle")?;
    let fc = single_totally_ramified(&loc_c.factors, "top")?;
    let e_b = fb.e;
    let e_c = fc.e;
    let e_cb = exact_u64_div(e_c as u64, e_b as u64).ok_or_else(|| {
        Error::InvalidInput(format!(
            "ramification indices incompatible: {e_b} does not divide {e_c}"
        ))
    })? as u32;

    let datum_c = Arc::new(fc.datum.clone().expect("totally ramified factor"));
    let ring_c = GroundRing::truncated_dvr(datum_c.as_ref().clone());

    // residue of p / pi_B in B
    let res_ab = {
        let datum_b = Arc::new(fb.datum.clone().expect("totally ramified factor"));
        let ring_b = GroundRing::truncated_dvr(datum_b.as_ref().clone());
        let q = ring_b
            .div_exact(&ring_b.from_i64(p as i64), &ring_b.uniformizer_pow(1))
            .map_err(|e| Error::PrecisionExhausted(format!("p / pi_B: {e}")))?;
        ring_b.residue_in_k(&q)
    };

    // pi_B as an element of the top completion, then its residue over pi_C
    let res_bc = {
        let h = if e_b == 1 {
            // the middle completion is Z_p; its uniformizer is p
            ring_c.from_i64(p as i64)
        } else {
            let t_c = BigInt::from(fc.root.expect("residue degree one"));
            let t_b = BigInt::from(fb.root.expect("residue degree one"));
            let mut coeffs = poly::translate(embed, &t_c);
            coeffs[0] -= t_b;
            ring_c.dvr_from_coeffs(&coeffs)
        };
        let v = ring_c
            .valuation(&h)
            .ok_or_else(|| Error::PrecisionExhausted("pi_B vanishes in C".into()))?;
        if v != e_cb as u64 {
            return Err(Error::MismatchFailure(format!(
                "v_C(pi_B) = {v}, expected the relative index {e_cb}"
            )));
        }
        let q = ring_c
            .div_exact(&h, &ring_c.uniformizer_pow(1))
            .map_err(|e| Error::PrecisionExhausted(format!("pi_B / pi_C: {e}")))?;
        ring_c.residue_in_k(&q)
    };

    // residue-field models of k (x)_R k for R = Z_p, B_p, C_p
    let k = GroundRing::PrimeField(p);
    let model = || -> Result<ChainComplex> {
        ChainComplex::free(k.clone(), 0, vec![1, 1], vec![Matrix::zero(k.clone(), 1, 1)])
    };
    let x_a = model()?;
    let x_b = model()?;
    let x_c = model()?;
    let map_with = |src: &ChainComplex, tgt: &ChainComplex, r: u64| -> Result<ChainMap> {
        let mut maps = BTreeMap::new();
        maps.insert(0, Matrix::identity(k.clone(), 1));
        maps.insert(
            1,
            crate::homalg::homology::scalar_matrix(&k, k.from_i64(r as i64)),
        );
        ChainMap::new(src, tgt, maps)
    };
    let f = map_with(&x_a, &x_b, res_ab)?;
    let g = map_with(&x_b, &x_c, res_bc)?;
    let gf = map_with(&x_a, &x_c, (res_ab * res_bc) % p)?;

    let f1 = mapping_fiber(&x_a, &x_b, &f)?;
    let f2 = mapping_fiber(&x_a, &x_c, &gf)?;
    let f3 = mapping_fiber(&x_b, &x_c, &g)?;

    // iota: F1 -> F2, (x, y) -> (x, g y); q: F2 -> F3, (x, z) -> (f x, z)
    let iota = fiber_block_map(&f1.fiber, &f2.fiber, |n| {
        (
            Matrix::identity(k.clone(), x_a.rank_at(n)),
            g.matrix_at(&x_b, &x_c, n + 1),
        )
    })?;
    let q = fiber_block_map(&f2.fiber, &f3.fiber, |n| {
        (
            f.matrix_at(&x_a, &x_b, n),
            Matrix::identity(k.clone(), x_c.rank_at(n + 1)),
        )
    })?;

    let d1 = homology_data(&f1.fiber)?;
    let d2 = homology_data(&f2.fiber)?;
    let d3 = homology_data(&f3.fiber)?;

    let lo = f1.fiber.lo.min(f2.fiber.lo).min(f3.fiber.lo) - 1;
    let mut slots = Vec::new();
    for n in lo..=depth {
        let u_iota = induced_map(&iota, &f1.fiber, &d1, &f2.fiber, &d2, n)?;
        let u_q = induced_map(&q, &f2.fiber, &d2, &f3.fiber, &d3, n)?;
        let u_conn = connecting(&f3, &f1, &d3, &d1, &x_b, n)?;
        let u_conn_up = connecting(&f3, &f1, &d3, &d1, &x_b, n + 1)?;
        let u_iota_here = u_iota.clone();

        let at = |m: i64, data: &HomologyData, cx: &ChainComplex| data.degree_data(&cx.ring, m);
        // slot at H_n(F2)
        if !exact_at(
            &k,
            &at(n, &d1, &f1.fiber),
            &at(n, &d2, &f2.fiber),
            &at(n, &d3, &f3.fiber),
            &u_iota_here,
            &u_q,
        )? {
            return Err(Error::ExactnessFailure(format!("H_{n}(I_CA)")));
        }
        slots.push(format!("H_{n}(I_CA)"));
        // slot at H_n(F3)
        if !exact_at(
            &k,
            &at(n, &d2, &f2.fiber),
            &at(n, &d3, &f3.fiber),
            &at(n - 1, &d1, &f1.fiber),
            &u_q,
            &u_conn,
        )? {
            return Err(Error::ExactnessFailure(format!("H_{n}(I_CB)")));
        }
        slots.push(format!("H_{n}(I_CB)"));
        // slot at H_n(F1)
        if !exact_at(
            &k,
            &at(n + 1, &d3, &f3.fiber),
            &at(n, &d1, &f1.fiber),
            &at(n, &d2, &f2.fiber),
            &u_conn_up,
            &u_iota,
        )? {
            return Err(Error::ExactnessFailure(format!("H_{n}(I_BA)")));
        }
        slots.push(format!("H_{n}(I_BA)"));
    }

    Ok(TripleReport {
        p,
        indices: (e_b, e_c, e_cb),
        fiber_ba: d1.result(),
        fiber_ca: d2.result(),
        fiber_cb: d3.result(),
        slots,
    })
}

fn single_totally_ramified<'a>(
    factors: &'a [LocalFactor],
    which: &str,
) -> Result<&'a LocalFactor> {
    if factors.len() != 1 || factors[0].f != 1 {
        return Err(Error::InvalidInput(format!(
            "the {which} step of the tower is not totally ramified at this prime \
             (need a single factor with residue degree 1)"
        )));
    }
    Ok(&factors[0])
}

/// Chain map between two fibers given per-degree blocks on the `X` and
/// shifted `Y` summands.
fn fiber_block_map(
    src: &ChainComplex,
    tgt: &ChainComplex,
    mut blocks: impl FnMut(i64) -> (Matrix, Matrix),
) -> Result<ChainMap> {
    let mut maps = BTreeMap::new();
    for n in src.lo..=src.hi() {
        let (top, bottom) = blocks(n);
        let m = top.block_diag(&bottom);
        assert_eq!(m.rows, tgt.rank_at(n));
        assert_eq!(m.cols, src.rank_at(n));
        if m.rows > 0 && m.cols > 0 {
            maps.insert(n, m);
        }
    }
    ChainMap::new(src, tgt, maps)
}

/// Connecting map `H_n(F3) -> H_{n-1}(F1)`: `(b, c) -> (0, b)` where the
/// `b`-component lives in `X_{B,n}`, the shifted summand of `F1_{n-1}`.
fn connecting(
    f3: &FiberTriple,
    f1: &FiberTriple,
    d3: &HomologyData,
    d1: &HomologyData,
    x_b: &ChainComplex,
    n: i64,
) -> Result<Matrix> {
    let ring = f3.fiber.ring.clone();
    let dd3 = d3.degree_data(&ring, n);
    let gens = &dd3.gens;
    // split F3_n = X_{B,n} (+) X_{C,n+1}: keep the top block
    let rb = x_b.rank_at(n);
    let b_part = gens.take_rows(0..rb.min(gens.rows));
    // embed into F1_{n-1} = X_{A,n-1} (+) X_{B,n}
    let ra = f1.source.rank_at(n - 1);
    let pad = Matrix::zero(ring.clone(), ra, gens.cols);
    let mut images = pad.vstack(&b_part);
    let expected = f1.fiber.rank_at(n - 1);
    if images.rows != expected {
        // pad or truncate at the support boundary (all zero there)
        images = Matrix::zero(ring.clone(), expected, gens.cols);
    }
    let dd1_prev = d1.degree_data(&ring, n - 1);
    if expected == 0 {
        return Ok(Matrix::zero(ring, dd1_prev.gens.cols, gens.cols));
    }
    induced_from_images(&f1.fiber, d1, n - 1, &images)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(coeffs: &[i64]) -> NumberRing {
        NumberRing::from_i64(coeffs).unwrap()
    }

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn tower_sqrt2_inside_fourth_root_at_two() {
        let b = ring(&[-2, 0, 1]);
        let c = ring(&[-2, 0, 0, 0, 1]);
        // theta_B = theta_C^2
        let rep = triple_fiber_check(&b, &c, &bi(&[0, 0, 1]), 2, 4).unwrap();
        assert_eq!(rep.indices, (2, 4, 2));
        assert_eq!(rep.fiber_ba.k_dim_at(0), Some(1));
        assert_eq!(rep.fiber_ba.k_dim_at(1), Some(1));
        assert!(!rep.slots.is_empty());
    }

    #[test]
    fn degenerate_tower_b_equals_c() {
        let b = ring(&[1, 0, 1]);
        let c = ring(&[1, 0, 1]);
        let rep = triple_fiber_check(&b, &c, &bi(&[0, 1]), 2, 4).unwrap();
        assert_eq!(rep.indices, (2, 2, 1));
        // I_{C/B} = 0: its homology vanishes identically
        assert!(rep.fiber_cb.support().is_empty());
    }

    #[test]
    fn bad_embedding_is_rejected() {
        let b = ring(&[-2, 0, 1]);
        let c = ring(&[-2, 0, 0, 0, 1]);
        assert!(triple_fiber_check(&b, &c, &bi(&[0, 1]), 2, 4).is_err());
    }
}
