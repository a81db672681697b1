use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use mlsep::par::Execution;
use mlsep::zeros::{alpha_grid, sweep_with, Beta, NewtonOptions};

fn sweeps(c: &mut Criterion) {
    let opts = NewtonOptions::default();
    let grid = alpha_grid(1.05, 2.0, 0.01);
    let mut group = c.benchmark_group("sweep_96_points");
    group.sample_size(10);
    for (name, beta) in [("beta_alpha", Beta::Alpha), ("beta_1", Beta::Fixed(1.0))] {
        for exec in [Execution::Sequential, Execution::Parallel] {
            group.bench_with_input(BenchmarkId::new(name, format!("{exec:?}")), &exec, |b, &exec| {
                b.iter(|| sweep_with(exec, beta, black_box(&grid), &opts))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, sweeps);
criterion_main!(benches);
