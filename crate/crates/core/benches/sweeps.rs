use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dbraid_core::nctorus::verify_projectors_with;
use dbraid_core::par::Execution;
use dbraid_core::sweep::{rank_sweep, torsion_sweep};
use dbraid_core::tables::{golden_table, search_labellings, TableName};

const MODES: [(&str, Execution); 2] = [("seq", Execution::Sequential), ("par", Execution::Parallel)];

fn sweeps(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweep");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new("rank_1000", name), &exec, |b, &exec| {
            b.iter(|| rank_sweep(exec, black_box(1), 1000))
        });
        group.bench_with_input(BenchmarkId::new("torsion_200", name), &exec, |b, &exec| {
            b.iter(|| torsion_sweep(exec, black_box(1), 200))
        });
    }
    group.finish();
}

fn search(c: &mut Criterion) {
    let mut group = c.benchmark_group("labelling_search");
    group.sample_size(10);
    let table = golden_table(TableName::Tree);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new("tree", name), &exec, |b, &exec| {
            b.iter(|| search_labellings(exec, black_box(&table)))
        });
    }
    group.finish();
}

fn projectors(c: &mut Criterion) {
    let mut group = c.benchmark_group("projectors");
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new("k64", name), &exec, |b, &exec| {
            b.iter(|| verify_projectors_with(exec, black_box(64), 1e-12))
        });
    }
    group.finish();
}

criterion_group!(benches, sweeps, search, projectors);
criterion_main!(benches);
