use criterion::{criterion_group, criterion_main, Criterion};
use num_bigint::BigInt;
use std::sync::Arc;

use ramforge_bench::integer_matrix;
use ramforge_core::exactalg::{smith_normal_form, EisensteinDatum};
use ramforge_core::localram::{verify_l2, verify_mainlemma};
use ramforge_core::numberfield::NumberRing;
use ramforge_core::thh::hochschild_direct;

fn bench_smith(c: &mut Criterion) {
    let m = integer_matrix(8);
    c.bench_function("smith_normal_form 8x8", |b| {
        b.iter(|| smith_normal_form(&m).unwrap())
    });
}

fn bench_mainlemma(c: &mut Criterion) {
    let datum = Arc::new(
        EisensteinDatum::new(2, 16, 4, vec![BigInt::from(0); 3], BigInt::from(1)).unwrap(),
    );
    c.bench_function("verify_mainlemma x^4 - 2 at 2", |b| {
        b.iter(|| verify_mainlemma(&datum, false).unwrap())
    });
    c.bench_function("verify_l2 x^4 - 2 at 2", |b| {
        b.iter(|| verify_l2(&datum).unwrap())
    });
}

fn bench_hochschild(c: &mut Criterion) {
    let a = NumberRing::from_i64(&[1, 0, 1]).unwrap();
    c.bench_function("hochschild_direct Z[i] through degree 5", |b| {
        b.iter(|| hochschild_direct(&a, 5).unwrap())
    });
}

fn bench_factor(c: &mut Criterion) {
    let a = NumberRing::from_i64(&[1, 0, -1, 0, 1]).unwrap();
    c.bench_function("factor_prime Phi_12 at 2..7", |b| {
        b.iter(|| {
            for p in [2u64, 3, 5, 7] {
                a.factor_prime(p).unwrap();
            }
        })
    });
}

criterion_group!(benches, bench_smith, bench_mainlemma, bench_hochschild, bench_factor);
criterion_main!(benches);
