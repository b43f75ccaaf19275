use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use cstar_bench::{algebra, ideal, tro};
use cstar_core::ideals::projection_generator;
use cstar_core::structure::wedderburn_decompose;
use cstar_core::tro::classify_tro;
use cstar_core::StarAlgebra;

fn bench_generate(c: &mut Criterion) {
    let mut group = c.benchmark_group("generate_algebra");
    for blocks in [vec![(2, 2)], vec![(3, 1), (2, 2), (1, 2)], vec![(4, 2), (3, 1)]] {
        let a = algebra(&blocks, 1);
        let label = format!("{blocks:?}");
        group.bench_with_input(BenchmarkId::from_parameter(label), &a, |b, a| {
            b.iter(|| StarAlgebra::generate(a.ambient_dim(), a.generating_set(), false, *a.tol()))
        });
    }
    group.finish();
}

fn bench_wedderburn(c: &mut Criterion) {
    let mut group = c.benchmark_group("wedderburn_decompose");
    for blocks in [vec![(2, 2)], vec![(3, 1), (2, 2), (1, 2)], vec![(4, 2), (3, 1)]] {
        let a = algebra(&blocks, 2);
        group.bench_with_input(BenchmarkId::from_parameter(format!("{blocks:?}")), &a, |b, a| {
            b.iter(|| wedderburn_decompose(black_box(a), 0))
        });
    }
    group.finish();
}

fn bench_projection_generator(c: &mut Criterion) {
    let mut group = c.benchmark_group("projection_generator");
    let a = algebra(&[(3, 1), (2, 2), (1, 2)], 3);
    for count in [1, 2, 4] {
        let j = ideal(&a, count);
        group.bench_with_input(BenchmarkId::from_parameter(count), &j, |b, j| {
            b.iter(|| projection_generator(&a, black_box(j)))
        });
    }
    group.finish();
}

fn bench_classify_tro(c: &mut Criterion) {
    let mut group = c.benchmark_group("classify_tro");
    for blocks in [vec![(2, 3)], vec![(3, 2), (2, 1)], vec![(4, 4), (3, 2), (1, 2)]] {
        let z = tro(&blocks, 4);
        group.bench_with_input(BenchmarkId::from_parameter(format!("{blocks:?}")), &z, |b, z| {
            b.iter(|| classify_tro(black_box(z), 0))
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    bench_generate,
    bench_wedderburn,
    bench_projection_generator,
    bench_classify_tro
);
criterion_main!(benches);
