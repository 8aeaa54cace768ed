//! Parallel vs. sequential throughput on the data-parallel entry points.
//!
//! With the default `parallel` feature the plain entry points fan out on
//! rayon; the `_seq` twins always run single-threaded. Building the bench
//! with `--no-default-features` makes both columns sequential, which is a
//! quick way to sanity-check the fallback.

use criterion::{criterion_group, criterion_main, Criterion};
use sgcurv::batch;
use sgcurv::verify::corpus;
use std::hint::black_box;

fn sweep_benches(c: &mut Criterion) {
    let instance = &corpus::corpus(41, 1)[0];
    let hi = instance.eps0.finite().map_or(1.0, |e| 0.9 * e);
    let grid: Vec<f64> = (0..64).map(|k| hi * k as f64 / 63.0).collect();
    let mut group = c.benchmark_group("sweep-64-points");
    group.sample_size(20);
    group.bench_function("parallel", |b| {
        b.iter(|| batch::sweep(black_box(&instance.graph), black_box(&grid)).unwrap())
    });
    group.bench_function("sequential", |b| {
        b.iter(|| batch::sweep_seq(black_box(&instance.graph), black_box(&grid)).unwrap())
    });
    group.finish();
}

fn corpus_benches(c: &mut Criterion) {
    let instances: Vec<_> = corpus::corpus(42, 96)
        .into_iter()
        .map(|i| (i.graph, i.eps))
        .collect();
    let mut group = c.benchmark_group("analyze-96-instances");
    group.sample_size(20);
    group.bench_function("parallel", |b| {
        b.iter(|| {
            for r in batch::analyze_batch(black_box(&instances)) {
                black_box(r.unwrap());
            }
        })
    });
    group.bench_function("sequential", |b| {
        b.iter(|| {
            for r in batch::analyze_batch_seq(black_box(&instances)) {
                black_box(r.unwrap());
            }
        })
    });
    group.finish();
}

fn curvature_benches(c: &mut Criterion) {
    let instances: Vec<_> = corpus::corpus(43, 24)
        .into_iter()
        .map(|i| (i.graph, i.eps))
        .collect();
    let mut group = c.benchmark_group("curvature-report-24-instances");
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        b.iter(|| {
            for r in batch::curvature_batch(black_box(&instances)) {
                black_box(r.unwrap());
            }
        })
    });
    group.bench_function("sequential", |b| {
        b.iter(|| {
            for r in batch::curvature_batch_seq(black_box(&instances)) {
                black_box(r.unwrap());
            }
        })
    });
    group.finish();
}

criterion_group!(benches, sweep_benches, corpus_benches, curvature_benches);
criterion_main!(benches);
