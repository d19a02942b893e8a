//! Kernels on the alloc-heavy paths: the pentagonal recurrence, eta
//! expansions, full coefficient tables, and the float summaries on top.

use criterion::{black_box, criterion_group, criterion_main, Criterion};

use hookdist_core::dist::{char_samples, probabilities};
use hookdist_core::hookstat::{coeff_table, colored_counts, d_coefficients};
use hookdist_core::series::partition_numbers;

fn bench_series(c: &mut Criterion) {
    c.bench_function("partition_numbers_2000", |b| {
        b.iter(|| partition_numbers(black_box(2000)))
    });
    c.bench_function("colored_counts_t2_2000", |b| {
        b.iter(|| colored_counts(2, black_box(2000)))
    });
    c.bench_function("d_coefficients_4000", |b| {
        b.iter(|| d_coefficients(black_box(4000)))
    });
}

fn bench_tables(c: &mut Criterion) {
    c.bench_function("coeff_table_t2_2000", |b| {
        b.iter(|| coeff_table(2, black_box(2000)))
    });
    c.bench_function("coeff_table_t3_2000", |b| {
        b.iter(|| coeff_table(3, black_box(2000)))
    });
}

fn bench_dist(c: &mut Criterion) {
    let table = coeff_table(2, 1000);
    let rs = [-2.0, -1.0, -0.5, 0.5, 1.0, 2.0];
    c.bench_function("probabilities_t2_1000", |b| {
        b.iter(|| probabilities(black_box(&table)))
    });
    c.bench_function("char_samples_t2_1000", |b| {
        b.iter(|| char_samples(black_box(&table), black_box(&rs)))
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = bench_series, bench_tables, bench_dist
}
criterion_main!(benches);
