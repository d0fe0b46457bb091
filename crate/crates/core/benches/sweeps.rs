use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use delannoy_core::counting::{count_delannoy, enumerate_delannoy};
use delannoy_core::harness::{Check, Execution};
use delannoy_core::phi;

fn sweeps(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweep");
    group.sample_size(10);
    for check in Check::ALL {
        for (label, exec) in [
            ("sequential", Execution::Sequential),
            ("parallel", Execution::Parallel),
        ] {
            group.bench_with_input(BenchmarkId::new(check.name(), label), &exec, |b, &exec| {
                b.iter(|| check.run(6, exec))
            });
        }
    }
    group.finish();
}

fn map_all(c: &mut Criterion) {
    let paths: Vec<_> = enumerate_delannoy(6).collect();
    c.bench_function("phi over D_6", |b| {
        b.iter(|| {
            paths
                .iter()
                .map(|p| phi(p).unwrap().vertices().len())
                .sum::<usize>()
        })
    });
    c.bench_function("count_delannoy(200)", |b| b.iter(|| count_delannoy(200)));
}

criterion_group!(benches, sweeps, map_all);
criterion_main!(benches);
