//! p-adic completions of a monogenic order: Hensel-lifted local factors,
//! differential exponents, and local Kähler groups.
//!
//! The factorization of `f mod p` is lifted to `f = prod H_i mod p^N`
//! with the `H_i` pairwise coprime mod p; `H_i` is the (truncated)
//! minimal polynomial of the completion at the i-th prime. The
//! differential exponent there is `d_i = v_p(Res(H_i, f')) / f_i`, which
//! avoids constructing local uniformizers at mixed primes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::finab::FinAbGroup;
use crate::exactalg::matrix::Matrix;
use crate::exactalg::poly;
use crate::exactalg::ring::{v_p, GroundRing};
use crate::exactalg::smith::dvr_smith_form;
use crate::numberfield::fppoly::{self, FpPoly};
use crate::numberfield::NumberRing;

/// One Hensel-lifted local factor of `f` at `p`.
#[derive(Clone, Debug)]
pub struct LiftedFactor {
    /// Monic, coefficients reduced mod `p^N`, constant first; degree
    /// `e * f`.
    pub poly: Vec<BigInt>,
    pub e: u32,
    pub f: u32,
    /// Differential exponent `d = v_p(Res(H, f')) / f`.
    pub d: u64,
    /// The residue root when `f = 1` (the unique root of the factor
    /// mod p).
    pub root: Option<u64>,
}

/// Working precision for a (field, prime) pair:
/// `max(2 v_p(disc) + 8, 16)`.
pub fn default_precision(a: &NumberRing, p: u64) -> u32 {
    let vd = if a.discriminant().is_zero() {
        0
    } else {
        v_p(a.discriminant(), p)
    };
    ((2 * vd + 8).max(16)) as u32
}

/// Hensel-lift the factorization of `f mod p` to precision `p^N`. The
/// groups `g_i^{e_i}` are the coprime blocks being lifted.
pub fn lifted_factors(a: &NumberRing, p: u64, precision: u32) -> Result<Vec<LiftedFactor>> {
    let fac = a.factor_prime(p)?;
    let modulus = BigInt::from(p).pow(precision);
    // blocks g_i^{e_i} over F_p
    let mut blocks: Vec<(FpPoly, u32, u32, Option<u64>)> = Vec::new();
    for g in &fac.factors {
        let gp: FpPoly = g
            .lift
            .iter()
            .map(|c| {
                let (_, d) = c.to_u64_digits();
                d.first().copied().unwrap_or(0)
            })
            .collect();
        let mut block: FpPoly = vec![1];
        for _ in 0..g.e {
            block = fppoly::mul(&block, &gp, p);
        }
        let root = if g.f == 1 {
            // g = x + c: root is -c mod p
            Some((p - gp[0] % p) % p)
        } else {
            None
        };
        blocks.push((block, g.e, g.f, root));
    }
    let lifted = hensel_multi(
        a.defining_poly(),
        &blocks.iter().map(|b| b.0.clone()).collect::<Vec<_>>(),
        p,
        precision,
    )?;
    let f_prime = poly::derivative(a.defining_poly());
    let mut out = Vec::new();
    for (h, (_, e, fdeg, root)) in lifted.into_iter().zip(blocks) {
        let h: Vec<BigInt> = h.iter().map(|c| c.mod_floor(&modulus)).collect();
        let res = poly::resultant(&h, &f_prime);
        let d = if (e, fdeg) == (1, a.degree() as u32) && poly::degree(&h) == a.degree() {
            // single factor: the resultant is the discriminant, exact
            v_p(&poly::resultant(a.defining_poly(), &f_prime), p)
        } else if res.is_zero() || (&res % &modulus).is_zero() {
            return Err(Error::PrecisionExhausted(format!(
                "resultant of local factor at {p} vanishes mod p^{precision}"
            )));
        } else {
            let v = v_p(&res.mod_floor(&modulus), p);
            if v as i128 >= precision as i128 - 2 {
                return Err(Error::PrecisionExhausted(format!(
                    "differential exponent at {p} too close to precision {precision}"
                )));
            }
            v
        };
        if d % fdeg as u64 != 0 {
            return Err(Error::MismatchFailure(format!(
                "v_p(Res) = {d} is not divisible by the residue degree {fdeg}"
            )));
        }
        out.push(LiftedFactor {
            poly: h,
            e,
            f: fdeg,
            d: d / fdeg as u64,
            root,
        });
    }
    Ok(out)
}

/// Linear Hensel lifting of a pairwise-coprime monic factorization.
fn hensel_multi(
    f: &[BigInt],
    blocks: &[FpPoly],
    p: u64,
    precision: u32,
) -> Result<Vec<Vec<BigInt>>> {
    if blocks.len() == 1 {
        // the factor is f itself
        let modulus = BigInt::from(p).pow(precision);
        return Ok(vec![f.iter().map(|c| c.mod_floor(&modulus)).collect()]);
    }
    let g0 = blocks[0].clone();
    let mut h0: FpPoly = vec![1];
    for b in &blocks[1..] {
        h0 = fppoly::mul(&h0, b, p);
    }
    let (g, h) = hensel_pair(f, &g0, &h0, p, precision)?;
    let mut out = vec![g];
    let rest = hensel_multi(&h, &blocks[1..], p, precision)?;
    out.extend(rest);
    Ok(out)
}

/// Quadratically-correct linear lift of one coprime pair `f = g h`.
fn hensel_pair(
    f: &[BigInt],
    g0: &FpPoly,
    h0: &FpPoly,
    p: u64,
    precision: u32,
) -> Result<(Vec<BigInt>, Vec<BigInt>)> {
    let (one, _s, t) = fppoly::extended_gcd(g0, h0, p);
    if !fppoly::is_one(&one) {
        return Err(Error::InvalidInput(
            "Hensel blocks are not coprime mod p".into(),
        ));
    }
    let lift = |q: &FpPoly| -> Vec<BigInt> { q.iter().map(|&c| BigInt::from(c)).collect() };
    let mut g = lift(g0);
    let mut h = lift(h0);
    let pb = BigInt::from(p);
    let mut pk = pb.clone();
    for _ in 1..precision {
        let mod_next = &pk * &pb;
        let err = poly::sub(f, &poly::mul(&g, &h));
        // err is divisible by p^k; correct the next digit
        let c: FpPoly = err
            .iter()
            .map(|x| {
                let (q, r) = x.mod_floor(&mod_next).div_rem(&pk);
                debug_assert!(r.is_zero(), "error term divisible by p^k");
                let (_, d) = q.to_u64_digits();
                d.first().copied().unwrap_or(0)
            })
            .collect();
        let tc = fppoly::mul(&t, &c, p);
        let dg = fppoly::divmod(&tc, g0, p).1;
        let num = fppoly::sub(&c, &fppoly::mul(&dg, h0, p), p);
        let (dh, rem) = fppoly::divmod(&num, g0, p);
        debug_assert!(fppoly::is_zero(&rem), "exact division in Hensel step");
        g = poly::add(&g, &scale_lift(&dg, &pk));
        h = poly::add(&h, &scale_lift(&dh, &pk));
        pk = mod_next;
    }
    let modulus = BigInt::from(p).pow(precision);
    let reduce = |q: Vec<BigInt>| -> Vec<BigInt> {
        q.into_iter().map(|c| c.mod_floor(&modulus)).collect()
    };
    Ok((reduce(g), reduce(h)))
}

fn scale_lift(q: &FpPoly, by: &BigInt) -> Vec<BigInt> {
    q.iter().map(|&c| BigInt::from(c) * by).collect()
}

/// The abelian group of `O/(s * H'(theta_H))` with `O = Z_p[x]/(H)` for
/// a lifted factor `H`, by a truncated Smith form of multiplication by
/// `s * H'`. With `s = 1` this is the local Kähler group.
pub fn local_quotient_group(
    factor: &LiftedFactor,
    p: u64,
    precision: u32,
    scale: &BigInt,
) -> Result<FinAbGroup> {
    let n = poly::degree(&factor.poly);
    if n == 0 {
        return Ok(FinAbGroup::trivial());
    }
    let ring = GroundRing::truncated_padic(p, precision);
    let modulus = BigInt::from(p).pow(precision);
    let h = factor.poly.clone();
    let h_prime: Vec<BigInt> = poly::derivative(&h).iter().map(|c| c * scale).collect();
    // columns: s H'(x) * x^j mod H, coefficients mod p^N
    let mut cols = Vec::with_capacity(n);
    let mut cur = poly::divmod_monic(&h_prime, &h).1;
    cur.resize(n, BigInt::zero());
    for j in 0..n {
        if j > 0 {
            let mut shifted = vec![BigInt::zero()];
            shifted.extend(cur.iter().cloned());
            cur = poly::divmod_monic(&shifted, &h).1;
            cur.resize(n, BigInt::zero());
        }
        cols.push(
            cur.iter()
                .map(|c| ring.from_bigint(c.mod_floor(&modulus)))
                .collect::<Vec<_>>(),
        );
    }
    let m = Matrix::from_columns(ring.clone(), n, &cols);
    let snf = dvr_smith_form(&m)?;
    if snf.rank < n {
        return Err(Error::PrecisionExhausted(
            "local multiplication matrix is singular mod p^N".into(),
        ));
    }
    let factors: Vec<BigInt> = snf
        .factor_valuations()
        .into_iter()
        .map(|v| BigInt::from(p).pow(v as u32))
        .collect();
    Ok(FinAbGroup::from_factors(0, factors))
}

/// The local Kähler group at one lifted factor.
pub fn local_omega1_group(factor: &LiftedFactor, p: u64, precision: u32) -> Result<FinAbGroup> {
    local_quotient_group(factor, p, precision, &BigInt::one())
}

/// Direct sum of the local Kähler groups over all factors above `p`.
pub fn local_omega1_at(a: &NumberRing, p: u64) -> Result<FinAbGroup> {
    let precision = default_precision(a, p);
    let mut total = FinAbGroup::trivial();
    for factor in lifted_factors(a, p, precision)? {
        total = total.direct_sum(&local_omega1_group(&factor, p, precision)?);
    }
    Ok(total)
}
