//! Global arithmetic of monogenic orders `Z[theta] = Z[x]/(f)`: prime
//! factorization, the Dedekind maximality criterion, Kähler
//! differentials, the inverse different, and quotients by elements.

pub mod completion;
pub mod fppoly;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactalg::finab::FinAbGroup;
use crate::exactalg::matrix::Matrix;
use crate::exactalg::poly;
use crate::exactalg::ring::GroundRing;
use crate::exactalg::smith::{hnf_columns, smith_normal_form};

/// A monogenic order `Z[theta] = Z[x]/(f)` with `f` monic irreducible.
#[derive(Clone, Debug)]
pub struct NumberRing {
    /// Defining polynomial, constant term first, monic.
    f: Vec<BigInt>,
    degree: usize,
    disc: BigInt,
    companion: Matrix,
    trace_mat: Matrix,
}

/// Factorization of `p` in the order, read off from `f mod p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeFactorization {
    pub p: u64,
    pub factors: Vec<PrimeFactor>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeFactor {
    /// Fixed lift of the irreducible factor mod p, coefficients in
    /// `[0, p)`, constant term first, monic.
    pub lift: Vec<BigInt>,
    /// Ramification index (multiplicity).
    pub e: u32,
    /// Residue degree (degree of the factor).
    pub f: u32,
}

impl PrimeFactorization {
    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|g| g.e == 1)
    }
}

/// The inverse different `D^{-1} = (1/f'(theta)) A`, stored as
/// `(1/N(delta)) * lattice` with `delta = f'(theta)`.
#[derive(Clone, Debug)]
pub struct FractionalIdealRep {
    /// `delta` as a polynomial in theta.
    pub denominator: Vec<BigInt>,
    /// `N(delta)`, up to sign the discriminant.
    pub denominator_norm: BigInt,
    /// Hermite basis of the numerator lattice in `Z^d`.
    pub lattice: Matrix,
    /// Warnings attached during construction (non-maximality).
    pub warnings: Vec<String>,
}

impl FractionalIdealRep {
    /// `[D^{-1} : A]` from the lattice determinant.
    pub fn index_over_ring(&self) -> BigInt {
        let det = self.lattice.determinant().abs();
        let d = self.lattice.rows as u32;
        let total = self.denominator_norm.abs().pow(d);
        &total / &det
    }
}

impl NumberRing {
    /// Build from the defining polynomial (constant term first). The
    /// polynomial must be monic and certified irreducible; degree up to 4
    /// is decided exactly, higher degrees need an irreducible reduction
    /// mod some small prime.
    pub fn new(f: Vec<BigInt>) -> Result<Self> {
        let mut f = f;
        poly::trim(&mut f);
        let degree = poly::degree(&f);
        if degree == 0 {
            return Err(Error::InvalidInput("constant polynomial".into()));
        }
        if !f[degree].is_one() {
            return Err(Error::InvalidInput("polynomial must be monic".into()));
        }
        certify_irreducible(&f)?;
        let disc = poly::discriminant_monic(&f);
        if disc.is_zero() {
            return Err(Error::InvalidInput("zero discriminant".into()));
        }
        let ring = GroundRing::Integers;
        let companion = Matrix::from_fn(ring.clone(), degree, degree, |i, j| {
            if j + 1 == degree {
                ring.from_bigint(-f[i].clone())
            } else if i == j + 1 {
                ring.one()
            } else {
                ring.zero()
            }
        });
        // trace matrix Tr(theta^{i+j}) from traces of companion powers
        let mut traces = Vec::with_capacity(2 * degree - 1);
        let mut power = Matrix::identity(ring.clone(), degree);
        for _ in 0..(2 * degree - 1) {
            let mut t = BigInt::zero();
            for i in 0..degree {
                if let crate::exactalg::ring::Scalar::Int(x) = power.get(i, i) {
                    t += x;
                }
            }
            traces.push(t);
            power = power.mul(&companion);
        }
        let trace_mat = Matrix::from_fn(ring.clone(), degree, degree, |i, j| {
            ring.from_bigint(traces[i + j].clone())
        });
        let nr = NumberRing {
            f,
            degree,
            disc,
            companion,
            trace_mat,
        };
        debug_assert_eq!(nr.trace_mat.determinant().abs(), nr.disc.abs());
        Ok(nr)
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        NumberRing::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn defining_poly(&self) -> &[BigInt] {
        &self.f
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn discriminant(&self) -> &BigInt {
        &self.disc
    }

    /// Multiplication-by-theta matrix on the power basis.
    pub fn companion_matrix(&self) -> &Matrix {
        &self.companion
    }

    pub fn describe(&self) -> String {
        poly::pretty(&self.f, "x")
    }

    /// `f'` as a polynomial in theta (reduced representative).
    pub fn f_prime(&self) -> Vec<BigInt> {
        self.reduce(&poly::derivative(&self.f))
    }

    /// Reduce a polynomial in theta modulo `f`.
    pub fn reduce(&self, z: &[BigInt]) -> Vec<BigInt> {
        let (_, r) = poly::divmod_monic(z, &self.f);
        let mut r = r;
        r.resize(self.degree.max(1), BigInt::zero());
        r.truncate(self.degree.max(1));
        r
    }

    /// Matrix of multiplication by `z(theta)` on the power basis.
    pub fn mult_matrix(&self, z: &[BigInt]) -> Matrix {
        let ring = GroundRing::Integers;
        let d = self.degree;
        let mut cols = Vec::with_capacity(d);
        let mut cur = self.reduce(z);
        for j in 0..d {
            if j > 0 {
                // multiply by theta: shift then reduce
                let mut shifted = vec![BigInt::zero()];
                shifted.extend(cur.iter().cloned());
                cur = self.reduce(&shifted);
            }
            cols.push(
                cur.iter()
                    .map(|c| ring.from_bigint(c.clone()))
                    .collect::<Vec<_>>(),
            );
        }
        Matrix::from_columns(ring, d, &cols)
    }

    /// Field norm of `z(theta)`.
    pub fn norm(&self, z: &[BigInt]) -> BigInt {
        self.mult_matrix(z).determinant()
    }

    /// Factor a rational prime: read multiplicities and residue degrees
    /// off the factorization of `f mod p`.
    pub fn factor_prime(&self, p: u64) -> Result<PrimeFactorization> {
        if !crate::exactalg::is_prime_u64(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        let fp = self.f_mod_p(p);
        let factors = fppoly::factor(&fp, p)?;
        let mut out = Vec::new();
        for (g, mult) in factors {
            out.push(PrimeFactor {
                lift: g.iter().map(|&c| BigInt::from(c)).collect(),
                e: mult as u32,
                f: fppoly::deg(&g) as u32,
            });
        }
        let total: u32 = out.iter().map(|g| g.e * g.f).sum();
        debug_assert_eq!(total as usize, self.degree);
        Ok(PrimeFactorization { p, factors: out })
    }

    fn f_mod_p(&self, p: u64) -> fppoly::FpPoly {
        let pb = BigInt::from(p);
        self.f
            .iter()
            .map(|c| {
                let r = c.mod_floor(&pb);
                let (_, digits) = r.to_u64_digits();
                digits.first().copied().unwrap_or(0)
            })
            .collect()
    }

    /// Dedekind's criterion: is `Z[theta]` maximal at `p`? With
    /// `f = prod g_i^{e_i} mod p`, put `gbar = prod g_i`,
    /// `hbar = f / gbar`, `T = (f - g h)/p` for lifts `g, h`; maximal iff
    /// `gcd(Tbar, gbar, hbar) = 1`.
    pub fn dedekind_maximal(&self, p: u64) -> Result<bool> {
        let fac = self.factor_prime(p)?;
        let mut gbar: fppoly::FpPoly = vec![1];
        for g in &fac.factors {
            let gp: fppoly::FpPoly = g
                .lift
                .iter()
                .map(|c| {
                    let (_, d) = c.to_u64_digits();
                    d.first().copied().unwrap_or(0)
                })
                .collect();
            gbar = fppoly::mul(&gbar, &gp, p);
        }
        let fp = self.f_mod_p(p);
        let hbar = fppoly::divmod(&fp, &gbar, p).0;
        // integer lifts with coefficients in [0, p)
        let lift = |q: &fppoly::FpPoly| -> Vec<BigInt> {
            q.iter().map(|&c| BigInt::from(c)).collect()
        };
        let g_lift = lift(&gbar);
        let h_lift = lift(&hbar);
        let gh = poly::mul(&g_lift, &h_lift);
        let diff = poly::sub(&self.f, &gh);
        let pb = BigInt::from(p);
        let t: Vec<BigInt> = diff
            .iter()
            .map(|c| {
                let (q, r) = c.div_rem(&pb);
                debug_assert!(r.is_zero(), "f - g h is divisible by p");
                q
            })
            .collect();
        let tbar: fppoly::FpPoly = t
            .iter()
            .map(|c| {
                let r = c.mod_floor(&pb);
                let (_, d) = r.to_u64_digits();
                d.first().copied().unwrap_or(0)
            })
            .collect();
        let g1 = fppoly::gcd(&tbar, &gbar, p);
        let g2 = fppoly::gcd(&g1, &hbar, p);
        Ok(fppoly::is_one(&g2) || fppoly::deg(&g2) == 0)
    }

    /// Primes dividing the discriminant (the candidates for ramification
    /// and non-maximality).
    pub fn ramified_candidates(&self) -> Result<Vec<u64>> {
        factor_u64_abs(&self.disc)
    }

    /// The Kähler differentials `Omega^1 = A/(f'(theta))` as an abelian
    /// group, by the Smith form of multiplication by `f'(theta)`.
    pub fn kaehler_global(&self) -> Result<FinAbGroup> {
        let fp = self.f_prime();
        if poly::is_zero(&fp) {
            return Err(Error::DegenerateInput(
                "f' vanishes; impossible for an irreducible polynomial in characteristic 0".into(),
            ));
        }
        let m = self.mult_matrix(&fp);
        let snf = smith_normal_form(&m)?;
        Ok(FinAbGroup::from_cokernel(&snf, self.degree))
    }

    /// `A/(z)` as an abelian group.
    pub fn quotient_by_element(&self, z: &[BigInt]) -> Result<FinAbGroup> {
        let zr = self.reduce(z);
        if poly::is_zero(&zr) {
            return Err(Error::DegenerateInput("quotient by zero".into()));
        }
        let m = self.mult_matrix(&zr);
        let snf = smith_normal_form(&m)?;
        Ok(FinAbGroup::from_cokernel(&snf, self.degree))
    }

    /// The inverse different `(1/f'(theta)) A`, verified against the
    /// trace-dual lattice. Non-maximality at a ramified prime attaches a
    /// warning rather than failing.
    pub fn inverse_different(&self) -> Result<FractionalIdealRep> {
        let mut warnings = Vec::new();
        for p in self.ramified_candidates()? {
            if !self.dedekind_maximal(p)? {
                warnings.push(format!(
                    "order is not maximal at {p}; inverse different describes Z[theta] only"
                ));
            }
        }
        let delta = self.f_prime();
        let m_delta = self.mult_matrix(&delta);
        let norm = m_delta.determinant();
        if norm.is_zero() {
            return Err(Error::DegenerateInput("f'(theta) has norm zero".into()));
        }
        // delta~ = N(delta) * delta^{-1} = adjugate column of 1
        let adj = adjugate(&m_delta);
        let (lattice, _) = hnf_columns(&adj);
        if warnings.is_empty() {
            // trace-dual check: (1/N) * lattice == T^{-1} Z^d, i.e.
            // HNF(lattice) == HNF(adj(T)) up to the sign of det T
            let t_adj = adjugate(&self.trace_mat);
            let (dual, _) = hnf_columns(&t_adj);
            let same = lattice == dual;
            if !same {
                return Err(Error::MismatchFailure(
                    "inverse different disagrees with the trace-dual lattice".into(),
                ));
            }
        }
        Ok(FractionalIdealRep {
            denominator: delta,
            denominator_norm: norm,
            lattice,
            warnings,
        })
    }
}

/// Adjugate of an integer matrix by cofactor expansion (small sizes).
fn adjugate(m: &Matrix) -> Matrix {
    let ring = GroundRing::Integers;
    let n = m.rows;
    if n == 0 {
        return Matrix::identity(ring, 0);
    }
    Matrix::from_fn(ring.clone(), n, n, |i, j| {
        // adj[i][j] = (-1)^{i+j} * minor_{j,i}
        let minor = Matrix::from_fn(ring.clone(), n - 1, n - 1, |r, c| {
            let rr = if r < j { r } else { r + 1 };
            let cc = if c < i { c } else { c + 1 };
            m.get(rr, cc).clone()
        });
        let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
        ring.from_bigint(BigInt::from(sign) * minor.determinant())
    })
}

/// Irreducibility certificate. Degrees up to 4 are decided exactly
/// (rational roots plus a bounded quadratic-factor search); beyond that,
/// an irreducible reduction mod a small prime or an Eisenstein prime is
/// required.
fn certify_irreducible(f: &[BigInt]) -> Result<()> {
    let d = poly::degree(f);
    if d == 1 {
        return Ok(());
    }
    // rational (hence integer) roots divide the constant term
    if f[0].is_zero() {
        return Err(Error::InvalidInput("reducible: x divides f".into()));
    }
    let mut div = BigInt::one();
    let bound = f[0].abs();
    while div <= bound {
        if (&bound % &div).is_zero() {
            for cand in [div.clone(), -div.clone()] {
                if poly::eval(f, &cand).is_zero() {
                    return Err(Error::InvalidInput(format!(
                        "reducible: rational root {cand}"
                    )));
                }
            }
        }
        div += 1;
    }
    if d <= 3 {
        return Ok(());
    }
    if d == 4 {
        // no root: only a quadratic * quadratic split remains; Cauchy
        // root bound gives |b| <= (1 + max|f_i|)^2, |a| <= 2(1 + max|f_i|)
        let maxc = f
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigInt::one);
        let root_bound = BigInt::one() + maxc;
        let a_bound = BigInt::from(2) * &root_bound;
        let b_bound = &root_bound * &root_bound;
        let to_i = |b: &BigInt| -> i64 { b.to_string().parse().unwrap_or(i64::MAX) };
        for a in -to_i(&a_bound)..=to_i(&a_bound) {
            for b in -to_i(&b_bound)..=to_i(&b_bound) {
                let g = vec![BigInt::from(b), BigInt::from(a), BigInt::one()];
                let (_, r) = poly::divmod_monic(f, &g);
                if poly::is_zero(&r) {
                    return Err(Error::InvalidInput(format!(
                        "reducible: quadratic factor x^2 + {a}x + {b}"
                    )));
                }
            }
        }
        return Ok(());
    }
    // degree >= 5: mod-p certificate
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23] {
        let pb = BigInt::from(p);
        let fp: fppoly::FpPoly = f
            .iter()
            .map(|c| {
                let r = c.mod_floor(&pb);
                let (_, digits) = r.to_u64_digits();
                digits.first().copied().unwrap_or(0)
            })
            .collect();
        if fppoly::deg(&fppoly::normalize(fp.clone(), p)) != d {
            continue;
        }
        if let Ok(fac) = fppoly::factor(&fp, p) {
            if fac.len() == 1 && fac[0].1 == 1 {
                return Ok(());
            }
        }
    }
    // Eisenstein fallback
    if let Ok(primes) = factor_u64_abs(&f[0]) {
        'outer: for p in primes {
            let pb = BigInt::from(p);
            if (&f[0] % (&pb * &pb)).is_zero() {
                continue;
            }
            for c in f.iter().take(d) {
                if !(c % &pb).is_zero() {
                    continue 'outer;
                }
            }
            return Ok(());
        }
    }
    Err(Error::InvalidInput(
        "cannot certify irreducibility (degree >= 5 without a mod-p or Eisenstein witness)".into(),
    ))
}

/// Prime divisors of `|n|` by trial division; errors past the desk-scale
/// bound.
pub fn factor_u64_abs(n: &BigInt) -> Result<Vec<u64>> {
    let mut m = n.abs();
    if m.is_zero() {
        return Err(Error::DegenerateInput("factoring zero".into()));
    }
    let mut out = Vec::new();
    let mut p = 2u64;
    while BigInt::from(p) * BigInt::from(p) <= m {
        let pb = BigInt::from(p);
        if (&m % &pb).is_zero() {
            out.push(p);
            while (&m % &pb).is_zero() {
                m = &m / &pb;
            }
        }
        p += if p == 2 { 1 } else { 2 };
        if p > 1_000_000 {
            return Err(Error::ResourceLimit("trial division bound exceeded".into()));
        }
    }
    if m > BigInt::one() {
        let (_, digits) = m.to_u64_digits();
        if digits.len() == 1 {
            out.push(digits[0]);
        } else {
            return Err(Error::ResourceLimit(
                "residual factor exceeds 64 bits".into(),
            ));
        }
    }
    out.sort_unstable();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(coeffs: &[i64]) -> NumberRing {
        NumberRing::from_i64(coeffs).unwrap()
    }

    #[test]
    fn irreducibility_gate() {
        assert!(NumberRing::from_i64(&[-1, 0, 1]).is_err()); // x^2 - 1
        assert!(NumberRing::from_i64(&[0, 0, 1]).is_err()); // x^2
        assert!(NumberRing::from_i64(&[-4, 0, 1]).is_err()); // x^2 - 4
        assert!(NumberRing::from_i64(&[4, 0, 5, 0, 1]).is_err()); // (x^2+1)(x^2+4)
        assert!(NumberRing::from_i64(&[1, 0, -1, 0, 1]).is_ok()); // x^4 - x^2 + 1
    }

    #[test]
    fn factor_gaussian_primes() {
        let a = ring(&[1, 0, 1]);
        let at5 = a.factor_prime(5).unwrap();
        assert_eq!(at5.factors.len(), 2);
        assert!(at5.factors.iter().all(|g| g.e == 1 && g.f == 1));
        let at3 = a.factor_prime(3).unwrap();
        assert_eq!(at3.factors.len(), 1);
        assert_eq!((at3.factors[0].e, at3.factors[0].f), (1, 2));
        let at2 = a.factor_prime(2).unwrap();
        assert_eq!(at2.factors.len(), 1);
        assert_eq!((at2.factors[0].e, at2.factors[0].f), (2, 1));
        assert_eq!(at2.factors[0].lift, vec![BigInt::one(), BigInt::one()]);
    }

    #[test]
    fn dedekind_criterion_examples() {
        assert!(ring(&[1, 0, 1]).dedekind_maximal(2).unwrap()); // Z[i]
        assert!(!ring(&[3, 0, 1]).dedekind_maximal(2).unwrap()); // x^2 + 3
        assert!(ring(&[-2, 0, 1]).dedekind_maximal(3).unwrap()); // 3 unramified
    }

    #[test]
    fn kaehler_of_quadratic_fields() {
        // oracles: SNF of multiplication by f'(theta), computed by hand
        let zi = ring(&[1, 0, 1]).kaehler_global().unwrap();
        assert_eq!(zi, FinAbGroup::from_factors(0, vec![2.into(), 2.into()]));
        let sqrt2 = ring(&[-2, 0, 1]).kaehler_global().unwrap();
        assert_eq!(
            sqrt2,
            FinAbGroup::from_factors(0, vec![2.into(), 4.into()])
        );
        let omega = ring(&[1, 1, 1]).kaehler_global().unwrap();
        assert_eq!(omega, FinAbGroup::cyclic(3));
        // degree-1 field: trivial differentials
        assert!(ring(&[0, 1]).kaehler_global().unwrap().is_trivial());
    }

    #[test]
    fn kaehler_order_is_discriminant() {
        for coeffs in [
            vec![0i64, 1],
            vec![1, 0, 1],
            vec![-2, 0, 1],
            vec![1, 1, 1],
            vec![-6, 0, 1],
            vec![-2, 0, 0, 1],
            vec![-3, 0, 0, 1],
            vec![-2, 0, 0, 0, 1],
            vec![1, 0, -1, 0, 1],
        ] {
            let a = ring(&coeffs);
            let k = a.kaehler_global().unwrap();
            assert_eq!(k.free_rank(), 0, "Omega^1 is torsion");
            assert_eq!(&k.order().unwrap(), &a.discriminant().abs());
        }
    }

    #[test]
    fn quotients_in_gaussians() {
        let a = ring(&[1, 0, 1]);
        assert!(a
            .quotient_by_element(&[BigInt::one()])
            .unwrap()
            .is_trivial());
        let by_two = a.quotient_by_element(&[2.into()]).unwrap();
        assert_eq!(by_two, FinAbGroup::from_factors(0, vec![2.into(), 2.into()]));
        // (4i) = (4) since i is a unit
        let by_4i = a.quotient_by_element(&[BigInt::zero(), 4.into()]).unwrap();
        assert_eq!(by_4i, FinAbGroup::from_factors(0, vec![4.into(), 4.into()]));
        assert!(a.quotient_by_element(&[BigInt::zero()]).is_err());
    }

    #[test]
    fn inverse_different_examples() {
        // A = Z: D^{-1} = Z
        let z = ring(&[0, 1]).inverse_different().unwrap();
        assert_eq!(z.index_over_ring(), BigInt::one());
        // Z[i]: index |disc| = 4, lattice 2 * Z^2 over denominator norm 4
        let zi = ring(&[1, 0, 1]).inverse_different().unwrap();
        assert!(zi.warnings.is_empty());
        assert_eq!(zi.index_over_ring(), BigInt::from(4));
        // Z[zeta_3]: index 3
        let om = ring(&[1, 1, 1]).inverse_different().unwrap();
        assert_eq!(om.index_over_ring(), BigInt::from(3));
        // non-maximal order attaches a warning
        let bad = ring(&[3, 0, 1]).inverse_different().unwrap();
        assert!(!bad.warnings.is_empty());
    }

    #[test]
    fn factorization_identities() {
        for coeffs in [
            vec![1i64, 0, 1],
            vec![-2, 0, 0, 1],
            vec![1, 0, -1, 0, 1],
        ] {
            let a = ring(&coeffs);
            for p in [2u64, 3, 5, 7] {
                let fac = a.factor_prime(p).unwrap();
                let total: u32 = fac.factors.iter().map(|g| g.e * g.f).sum();
                assert_eq!(total as usize, a.degree());
                // prod g_i^{e_i} = f mod p
                let mut prod = vec![BigInt::one()];
                for g in &fac.factors {
                    for _ in 0..g.e {
                        prod = poly::mul(&prod, &g.lift);
                    }
                }
                let pb = BigInt::from(p);
                for (c, fc) in prod.iter().zip(a.defining_poly()) {
                    assert_eq!(c.mod_floor(&pb), fc.mod_floor(&pb));
                }
            }
        }
    }
}
