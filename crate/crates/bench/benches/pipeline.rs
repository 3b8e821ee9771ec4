use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qwiso_bench::{paley, paley_walk, PALEY_ORDERS};
use qwiso_core::{
    block_decompose, direct_blocks, full_pipeline_from_spectra, global_char_poly, walk_operator,
};

fn build(c: &mut Criterion) {
    let mut group = c.benchmark_group("walk_operator");
    for p in PALEY_ORDERS {
        let g = paley(p);
        group.bench_with_input(BenchmarkId::from_parameter(p), &g, |b, g| {
            b.iter(|| walk_operator(black_box(g)).unwrap())
        });
    }
    group.finish();
}

fn decompose(c: &mut Criterion) {
    let mut group = c.benchmark_group("block_decompose");
    group.sample_size(10);
    for p in [13, 41] {
        let u = paley_walk(p);
        group.bench_with_input(BenchmarkId::from_parameter(p), &u, |b, u| {
            b.iter(|| block_decompose(black_box(u)).unwrap())
        });
    }
    group.finish();

    let mut group = c.benchmark_group("direct_blocks");
    for p in [13, 41] {
        let g = paley(p);
        group.bench_with_input(BenchmarkId::from_parameter(p), &g, |b, g| {
            b.iter(|| direct_blocks(black_box(g)).unwrap())
        });
    }
    group.finish();
}

fn polynomial(c: &mut Criterion) {
    let mut group = c.benchmark_group("global_char_poly");
    for p in [13, 41] {
        let blocks = direct_blocks(&paley(p)).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(p), &blocks, |b, blocks| {
            b.iter(|| global_char_poly(black_box(blocks)).unwrap())
        });
    }
    group.finish();
}

fn pipeline(c: &mut Criterion) {
    let mut group = c.benchmark_group("full_pipeline");
    group.sample_size(10);
    for p in [13, 41] {
        let g = paley(p);
        group.bench_with_input(BenchmarkId::from_parameter(p), &g, |b, g| {
            b.iter(|| full_pipeline_from_spectra(black_box(g)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, build, decompose, polynomial, pipeline);
criterion_main!(benches);
