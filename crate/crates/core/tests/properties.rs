//! Property tests for the exact linear algebra and the homology engine.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use std::collections::BTreeMap;
use std::sync::Arc;

use ramforge_core::exactalg::{
    bivar_reduce, dvr_smith_form, kernel_basis, smith_normal_form, BivarElem, EisensteinDatum,
    GroundRing, Matrix, Scalar,
};
use ramforge_core::homalg::{
    free_resolution, homology, les_exactness, mapping_fiber, tor, BasedAlgebra, ChainComplex,
    ChainMap, PresentedModule,
};

fn int_matrix(entries: &[Vec<i64>]) -> Matrix {
    let ring = GroundRing::Integers;
    Matrix::from_fn(ring.clone(), entries.len(), entries[0].len(), |i, j| {
        ring.from_i64(entries[i][j])
    })
}

/// gcd of all k x k minors of a small integer matrix (the classical
/// invariant-factor oracle).
fn minor_gcd(entries: &[Vec<i64>], k: usize) -> BigInt {
    let n = entries.len();
    let m = entries[0].len();
    let rows: Vec<Vec<usize>> = combinations(n, k);
    let cols: Vec<Vec<usize>> = combinations(m, k);
    let mut g = BigInt::zero();
    for r in &rows {
        for c in &cols {
            let sub = Matrix::from_fn(GroundRing::Integers, k, k, |i, j| {
                GroundRing::Integers.from_i64(entries[r[i]][c[j]])
            });
            g = g.gcd(&sub.determinant());
        }
    }
    g.abs()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if k > n {
        return vec![];
    }
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn snf_transforms_and_minor_gcd_oracle(vals in proptest::collection::vec(-9i64..=9, 9)) {
        let entries: Vec<Vec<i64>> = vals.chunks(3).map(|c| c.to_vec()).collect();
        let m = int_matrix(&entries);
        let snf = smith_normal_form(&m).unwrap();
        // U M V is the diagonal of invariant factors
        let d = snf.left.mul(&m).mul(&snf.right);
        prop_assert_eq!(&d, &snf.diagonal(3, 3));
        prop_assert!(snf.left.determinant().abs().is_one());
        prop_assert!(snf.right.determinant().abs().is_one());
        // divisibility chain and the gcd-of-minors characterization
        let mut prev = BigInt::one();
        for (k, f) in snf.factors.iter().enumerate() {
            let fk = match f { Scalar::Int(x) => x.clone(), _ => unreachable!() };
            prop_assert!((&fk % &prev).is_zero());
            let gk = minor_gcd(&entries, k + 1);
            let gk_prev = if k == 0 { BigInt::one() } else { minor_gcd(&entries, k) };
            prop_assert_eq!(&fk * gk_prev, gk);
            prev = fk;
        }
    }

    #[test]
    fn dvr_snf_matches_p_part_of_integer_snf(vals in proptest::collection::vec(-9i64..=9, 9),
                                             p_idx in 0usize..3) {
        let p = [2u64, 3, 5][p_idx];
        let entries: Vec<Vec<i64>> = vals.chunks(3).map(|c| c.to_vec()).collect();
        let m = int_matrix(&entries);
        let snf = smith_normal_form(&m).unwrap();
        let ring = GroundRing::truncated_padic(p, 16);
        let lifted = Matrix::from_fn(ring.clone(), 3, 3, |i, j| ring.from_i64(entries[i][j]));
        match dvr_smith_form(&lifted) {
            Ok(local) => {
                // p-adic valuations of integer invariant factors
                let int_vals: Vec<u64> = snf.factors.iter().map(|f| {
                    let x = match f { Scalar::Int(x) => x.clone(), _ => unreachable!() };
                    let mut v = 0u64;
                    let mut y = x.abs();
                    let pb = BigInt::from(p);
                    while (&y % &pb).is_zero() { v += 1; y /= &pb; }
                    v
                }).collect();
                // local rank can exceed the integer rank only through
                // units; compare the torsion profile up to integer rank
                let local_vals = local.factor_valuations();
                prop_assert!(local.rank >= snf.rank);
                for (a, b) in int_vals.iter().zip(local_vals.iter()) {
                    prop_assert_eq!(a, b);
                }
                for b in local_vals.iter().skip(snf.rank) {
                    // beyond the integer rank the matrix is p-adically
                    // invertible junk-free only if factors are units
                    prop_assert_eq!(*b, 0u64);
                }
            }
            Err(_) => {
                // guard fired: only possible when some invariant factor
                // valuation reaches N - G = 12, impossible for entries
                // in [-9, 9] (|det| <= 9^3 * 6 < 2^12), so rank-deficient
                // matrices only
                prop_assert!(snf.rank < 3);
            }
        }
    }

    #[test]
    fn kernel_basis_spans_brute_force_kernel(vals in proptest::collection::vec(-4i64..=4, 6)) {
        let entries: Vec<Vec<i64>> = vals.chunks(3).map(|c| c.to_vec()).collect();
        let m = int_matrix(&entries);
        let k = kernel_basis(&m).unwrap();
        prop_assert!(m.mul(&k).is_zero(), "M K = 0 exactly");
        // brute force vectors in a small box
        for x in -3i64..=3 {
            for y in -3i64..=3 {
                for z in -3i64..=3 {
                    let v = vec![
                        GroundRing::Integers.from_i64(x),
                        GroundRing::Integers.from_i64(y),
                        GroundRing::Integers.from_i64(z),
                    ];
                    let img = m.mul_vec(&v);
                    let is_zero = img.iter().all(|s| GroundRing::Integers.is_zero(s));
                    if is_zero {
                        let vm = Matrix::from_columns(GroundRing::Integers, 3, &[v]);
                        let sol = ramforge_core::exactalg::solve_columns(&k, &vm).unwrap();
                        prop_assert!(sol.is_some(), "({x},{y},{z}) in the kernel lattice");
                    }
                }
            }
        }
    }

    #[test]
    fn bivar_reduction_is_multiplicative(c1 in proptest::collection::vec(0i64..8, 9),
                                         c2 in proptest::collection::vec(0i64..8, 9)) {
        let datum = Arc::new(
            EisensteinDatum::new(2, 14, 3, vec![BigInt::one(), BigInt::zero()], BigInt::one())
                .unwrap(),
        );
        let grid = |v: &[i64]| -> Vec<Vec<BigInt>> {
            v.chunks(3).map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
        };
        let a = bivar_reduce(&datum, &grid(&c1));
        let b = bivar_reduce(&datum, &grid(&c2));
        // raw product of raw grids, reduced once
        let mut raw = vec![vec![BigInt::zero(); 5]; 5];
        for i in 0..3 { for j in 0..3 { for k in 0..3 { for l in 0..3 {
            let t = BigInt::from(c1[i * 3 + j]) * BigInt::from(c2[k * 3 + l]);
            raw[i + k][j + l] += t;
        }}}}
        let direct = bivar_reduce(&datum, &raw);
        prop_assert_eq!(a.mul(&b), direct);
    }

    #[test]
    fn dvr_valuation_is_additive(a in proptest::collection::vec(0i64..64, 3),
                                 b in proptest::collection::vec(0i64..64, 3)) {
        let datum = EisensteinDatum::new(2, 18, 3, vec![BigInt::zero(); 2], BigInt::one()).unwrap();
        let ring = GroundRing::truncated_dvr(datum);
        let to_scalar = |v: &[i64]| ring.dvr_from_coeffs(
            &v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>());
        let x = to_scalar(&a);
        let y = to_scalar(&b);
        if let (Some(vx), Some(vy)) = (ring.valuation(&x), ring.valuation(&y)) {
            let guard = ring.guard_threshold().unwrap();
            if ((vx + vy) as i128) < guard {
                prop_assert_eq!(ring.valuation(&ring.mul(&x, &y)), Some(vx + vy));
            }
        }
    }

    #[test]
    fn tor_is_symmetric_over_z(m in 2u64..30, n in 2u64..30) {
        let alg = BasedAlgebra::ground_algebra(GroundRing::Integers);
        let zm = PresentedModule::cyclic(alg.clone(),
            vec![vec![GroundRing::Integers.from_i64(m as i64)]]);
        let zn = PresentedModule::cyclic(alg.clone(),
            vec![vec![GroundRing::Integers.from_i64(n as i64)]]);
        let t1 = tor(&zm, &zn, 3).unwrap();
        let t2 = tor(&zn, &zm, 3).unwrap();
        for d in 0..=3i64 {
            prop_assert_eq!(t1.ab_group_at(d).unwrap(), t2.ab_group_at(d).unwrap());
        }
    }

    #[test]
    fn euler_characteristic_over_prime_field(seed in proptest::collection::vec(0i64..5, 6),
                                             pick in 0usize..4) {
        let f = GroundRing::PrimeField(5);
        let d1 = Matrix::from_fn(f.clone(), 2, 3, |i, j| f.from_i64(seed[i * 3 + j]));
        let k = kernel_basis(&d1).unwrap();
        if k.cols == 0 { return Ok(()); }
        let d2 = k.submatrix_cols(&[pick % k.cols]);
        let c = ChainComplex::free(f, 0, vec![2, 3, 1], vec![d1, d2]).unwrap();
        let h = homology(&c).unwrap();
        let dim = |n: i64| h.k_dim_at(n).unwrap() as i64;
        prop_assert_eq!(2 - 3 + 1, dim(0) - dim(1) + dim(2));
    }

    #[test]
    fn fiber_les_is_exact_for_scaled_endomorphisms(scale in 1i64..8, modulus in 2i64..10) {
        // X = [Z --modulus--> Z], phi = multiplication by scale
        let z = GroundRing::Integers;
        let d = Matrix::from_fn(z.clone(), 1, 1, |_, _| z.from_i64(modulus));
        let c = ChainComplex::free(z.clone(), 0, vec![1, 1], vec![d]).unwrap();
        let mut maps = BTreeMap::new();
        maps.insert(0, Matrix::from_fn(z.clone(), 1, 1, |_, _| z.from_i64(scale)));
        maps.insert(1, Matrix::from_fn(z.clone(), 1, 1, |_, _| z.from_i64(scale)));
        let phi = ChainMap::new(&c, &c, maps).unwrap();
        let t = mapping_fiber(&c, &c, &phi).unwrap();
        prop_assert!(les_exactness(&t, 4).is_ok());
    }

    #[test]
    fn resolutions_are_exact_in_middle_degrees(n in 2i64..40) {
        let alg = BasedAlgebra::ground_algebra(GroundRing::Integers);
        let m = PresentedModule::cyclic(alg.clone(),
            vec![vec![GroundRing::Integers.from_i64(n)]]);
        let res = free_resolution(&m, 5, None).unwrap();
        let c = res.ground_complex().unwrap();
        let h = homology(&c).unwrap();
        for d in 1..c.hi() {
            prop_assert!(h.is_zero_at(d));
        }
    }
}

#[test]
fn bivar_identities_from_the_normal_form() {
    // f(pi1) - f(pi2) reduces to zero for several data
    for (p, e, g, u) in [
        (2u64, 2u32, vec![0i64], 1i64),
        (2, 3, vec![1, 1], 1),
        (3, 3, vec![2, 0], 2),
        (5, 4, vec![1, 2, 3], 3),
    ] {
        let datum = Arc::new(
            EisensteinDatum::new(
                p,
                14,
                e,
                g.into_iter().map(BigInt::from).collect(),
                BigInt::from(u),
            )
            .unwrap(),
        );
        let f = datum.f_coeffs();
        let a = BivarElem::from_univariate(&datum, &f, true);
        let b = BivarElem::from_univariate(&datum, &f, false);
        assert!(a.is_zero() && b.is_zero());
    }
}

#[test]
fn core_values_are_shareable_across_threads() {
    // everything is immutable after construction and safe to evaluate
    // concurrently
    fn assert_send_sync<T: Send + Sync>() {}
    assert_send_sync::<GroundRing>();
    assert_send_sync::<Matrix>();
    assert_send_sync::<EisensteinDatum>();
    assert_send_sync::<BivarElem>();
    assert_send_sync::<ChainComplex>();
    assert_send_sync::<PresentedModule>();
    assert_send_sync::<ramforge_core::FinAbGroup>();
    assert_send_sync::<ramforge_core::NumberRing>();

    // a classification fan-out over primes actually runs in parallel
    let a = std::sync::Arc::new(ramforge_core::NumberRing::from_i64(&[-2, 0, 1]).unwrap());
    let handles: Vec<_> = [2u64, 3, 5, 7]
        .into_iter()
        .map(|p| {
            let a = a.clone();
            std::thread::spawn(move || ramforge_core::localram::classify(&a, p, None).unwrap())
        })
        .collect();
    for h in handles {
        h.join().unwrap();
    }
}

#[test]
fn zero_map_fiber_splits_into_shifted_summands() {
    let z = GroundRing::Integers;
    let d = Matrix::from_fn(z.clone(), 1, 1, |_, _| z.from_i64(6));
    let c = ChainComplex::free(z.clone(), 0, vec![1, 1], vec![d]).unwrap();
    let t = mapping_fiber(&c, &c, &ChainMap::zero()).unwrap();
    let h = homology(&t.fiber).unwrap();
    let hc = homology(&c).unwrap();
    // H_n(fiber) = H_n(C) (+) H_{n+1}(C)
    for deg in [-1i64, 0, 1] {
        let expected = hc
            .ab_group_at(deg)
            .unwrap()
            .direct_sum(&hc.ab_group_at(deg + 1).unwrap());
        assert_eq!(h.ab_group_at(deg).unwrap(), expected, "degree {deg}");
    }
    les_exactness(&t, 4).unwrap();
}
