use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use cobcalc::par::Execution;
use cobcalc::verify::{connected_grid, grid_surfaces, run_suite, theorem_sweep};

fn modes() -> Vec<(&'static str, Execution)> {
    let mut m = vec![("sequential", Execution::Sequential)];
    if Execution::parallel_available() {
        m.push(("parallel", Execution::Parallel));
    }
    m
}

fn theorem(c: &mut Criterion) {
    let surfaces = connected_grid(2, 3, 1, 4);
    let mut group = c.benchmark_group("theorem_sweep");
    group.sample_size(10);
    for (name, exec) in modes() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| theorem_sweep(black_box(&surfaces), exec))
        });
    }
    group.finish();
}

fn suite(c: &mut Criterion) {
    let surfaces = grid_surfaces(1, 3, 3);
    let mut group = c.benchmark_group("run_suite");
    group.sample_size(10);
    for (name, exec) in modes() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| run_suite(black_box(&surfaces), exec))
        });
    }
    group.finish();
}

criterion_group!(benches, theorem, suite);
criterion_main!(benches);
