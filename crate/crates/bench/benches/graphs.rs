use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use ccg_core::delta::build_delta;
use ccg_core::gamma::blow_up;
use ccg_core::lambda::{build_lambda, enumerate_b_triangles};
use ccg_core::oracle::{brute_gamma, brute_lambda};

fn bench_synthetic(c: &mut Criterion) {
    let mut group = c.benchmark_group("synthetic");
    group.sample_size(10);
    for p in [3u64, 5, 7, 13] {
        group.bench_with_input(BenchmarkId::new("build_lambda", p), &p, |b, &p| {
            b.iter(|| build_lambda(p).unwrap())
        });
    }
    for p in [5u64, 13] {
        group.bench_with_input(BenchmarkId::new("build_delta", p), &p, |b, &p| {
            b.iter(|| build_delta(p).unwrap())
        });
    }
    let d7 = build_delta(7).unwrap();
    group.bench_function("b_triangles_p7", |b| {
        b.iter(|| enumerate_b_triangles(&d7))
    });
    let l5 = build_lambda(5).unwrap();
    group.bench_function("blow_up_p5", |b| b.iter(|| blow_up(&l5).unwrap()));
    group.finish();
}

fn bench_oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle");
    group.sample_size(10);
    for p in [2u64, 3] {
        group.bench_with_input(BenchmarkId::new("brute_lambda", p), &p, |b, &p| {
            b.iter(|| brute_lambda(p).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("brute_gamma", p), &p, |b, &p| {
            b.iter(|| brute_gamma(p).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_synthetic, bench_oracle);
criterion_main!(benches);
