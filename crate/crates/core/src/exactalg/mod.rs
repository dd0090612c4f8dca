//! Exact scalar and matrix arithmetic over the ground rings `Z`, `F_p`,
//! `Z/p^N` (as truncated `Z_p`), and truncated totally ramified DVRs,
//! plus the normal forms every homology computation reduces to.

pub mod bivar;
pub mod eisenstein;
pub mod finab;
pub mod matrix;
pub mod poly;
pub mod ring;
pub mod smith;

pub use bivar::{bivar_reduce, BivarElem};
pub use eisenstein::EisensteinDatum;
pub use finab::FinAbGroup;
pub use matrix::Matrix;
pub use ring::{GroundRing, Scalar, PRECISION_GUARD};
pub use smith::{
    dvr_smith_form, hnf_columns, kernel_basis, smith_form, smith_normal_form, solve_columns,
    SmithForm,
};

/// Deterministic primality test for 64-bit integers (deterministic
/// Miller-Rabin witness set).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    r
}
