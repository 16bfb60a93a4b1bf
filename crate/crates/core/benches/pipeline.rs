use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;
use svn_topsis::topsis::{run_batch, run_pipeline_with, PipelineOptions};
use svn_topsis::Execution;

#[path = "../tests/common/mod.rs"]
mod common;

use common::{generate, rng, Bounds, SMALL};

const LARGE: Bounds = Bounds {
    max_dms: 12,
    max_criteria: 40,
    min_alternatives: 2000,
    max_alternatives: 2000,
};

fn modes() -> [(&'static str, Execution); 2] {
    [
        ("sequential", Execution::Sequential),
        ("parallel", Execution::Parallel),
    ]
}

fn large_problem(c: &mut Criterion) {
    let problem = generate(&mut rng(1), &LARGE).problem;
    let mut group = c.benchmark_group("large_problem");
    for (name, execution) in modes() {
        let options = PipelineOptions {
            execution,
            ..Default::default()
        };
        group.bench_with_input(BenchmarkId::from_parameter(name), &options, |b, o| {
            b.iter(|| run_pipeline_with(black_box(&problem), o))
        });
    }
    group.finish();
}

fn batch(c: &mut Criterion) {
    let mut r = rng(2);
    let problems: Vec<_> = (0..256).map(|_| generate(&mut r, &SMALL).problem).collect();
    let mut group = c.benchmark_group("batch_256");
    for (name, execution) in modes() {
        let options = PipelineOptions {
            execution,
            ..Default::default()
        };
        group.bench_with_input(BenchmarkId::from_parameter(name), &options, |b, o| {
            b.iter(|| run_batch(black_box(&problems), o))
        });
    }
    group.finish();
}

criterion_group!(benches, large_problem, batch);
criterion_main!(benches);
