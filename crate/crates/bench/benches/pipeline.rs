use std::sync::Arc;

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use eisenkit::eisenstein::{global_divisor, prime_sum_check, verify_bounds, DivisorMode, Variant};
use eisenkit::poly::{parse_bipoly, resultant_with_derivative};
use eisenkit::puiseux::{expand_regular, puiseux_branches};
use eisenkit::NumberField;
use eisenkit_bench::corpus;

fn expansion(c: &mut Criterion) {
    let q = Arc::new(NumberField::rationals());
    let p = parse_bipoly("w^2 - z - 1").unwrap();
    let mut g = c.benchmark_group("expand_regular");
    for k in [50usize, 100, 200] {
        g.bench_with_input(BenchmarkId::from_parameter(k), &k, |b, &k| {
            b.iter(|| expand_regular(&p, &q.one(), black_box(k), q.clone()).unwrap())
        });
    }
    g.finish();

    let mut g = c.benchmark_group("puiseux_branches");
    g.sample_size(10);
    for (name, p) in corpus() {
        g.bench_function(name, |b| b.iter(|| puiseux_branches(&p, q.clone(), 40).unwrap()));
    }
    g.finish();
}

fn certificates(c: &mut Criterion) {
    let mut g = c.benchmark_group("global_divisor");
    for (name, p) in corpus() {
        g.bench_function(name, |b| {
            b.iter(|| global_divisor(&p, 1, 0, Variant::General, DivisorMode::Coefficient).unwrap())
        });
    }
    g.finish();

    let q = Arc::new(NumberField::rationals());
    let p = parse_bipoly("w^2 - z - 1").unwrap();
    let series = expand_regular(&p, &q.one(), 200, q).unwrap();
    let cert = global_divisor(&p, 1, 0, Variant::Regular, DivisorMode::Coefficient).unwrap();
    c.bench_function("verify_bounds/binomial_200", |b| b.iter(|| verify_bounds(&cert, &series).unwrap()));
}

fn arithmetic(c: &mut Criterion) {
    let mut g = c.benchmark_group("resultant_with_derivative");
    for (name, p) in corpus() {
        g.bench_function(name, |b| b.iter(|| resultant_with_derivative(black_box(&p)).unwrap()));
    }
    g.finish();

    let mut g = c.benchmark_group("prime_sum_check");
    g.sample_size(10);
    g.bench_function("10000", |b| b.iter(|| prime_sum_check(black_box(10_000))));
    g.finish();
}

criterion_group!(benches, expansion, certificates, arithmetic);
criterion_main!(benches);
