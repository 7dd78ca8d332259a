use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use labelcut::solver::generate::{random_instance, GeneratorConfig};
use labelcut::{minimize_bruteforce, minimize_cut, verify_exhaustive, verify_sampled};
use labelcut_bench::{desk_scale_instance, sqrt_spec};

fn bench_verify(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_exhaustive");
    group.sample_size(10);
    for k in [8, 10, 12] {
        let spec = sqrt_spec(k);
        group.bench_with_input(BenchmarkId::from_parameter(k), &k, |b, &k| {
            b.iter(|| verify_exhaustive(&spec, black_box(k)).unwrap())
        });
    }
    group.finish();

    let spec = sqrt_spec(64);
    c.bench_function("verify_sampled/k64_100k", |b| {
        b.iter(|| verify_sampled(&spec, 64, black_box(100_000), 1).unwrap())
    });
}

fn bench_minimize(c: &mut Criterion) {
    let small = random_instance(3, &GeneratorConfig::small());
    c.bench_function("minimize_cut/small", |b| b.iter(|| minimize_cut(black_box(&small)).unwrap()));
    c.bench_function("minimize_bruteforce/small", |b| {
        b.iter(|| minimize_bruteforce(black_box(&small)).unwrap())
    });

    let large = desk_scale_instance(0);
    let mut group = c.benchmark_group("minimize_cut");
    group.sample_size(10);
    group.bench_function("desk_scale", |b| b.iter(|| minimize_cut(black_box(&large)).unwrap()));
    group.finish();
}

criterion_group!(benches, bench_verify, bench_minimize);
criterion_main!(benches);
