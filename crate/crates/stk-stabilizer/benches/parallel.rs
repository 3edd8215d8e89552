use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use stk_graph::{example_3_1, Graph, Lattice};
use stk_stabilizer::{build_rx, emit_presentation, Config, Strategy};

fn relator_verification(c: &mut Criterion) {
    let mut group = c.benchmark_group("build_rx");
    group.sample_size(10);
    let g = Graph::null(4);
    for strategy in [Strategy::Sequential, Strategy::Parallel] {
        group.bench_with_input(BenchmarkId::new("null4", format!("{strategy:?}")), &strategy, |b, &s| {
            b.iter(|| black_box(build_rx(&g, 0, s).unwrap().pres.relators.len()))
        });
    }
    group.finish();
}

fn presentation(c: &mut Criterion) {
    let mut group = c.benchmark_group("emit_presentation");
    group.sample_size(10);
    let g = example_3_1();
    let lat = Lattice::build(&g);
    for strategy in [Strategy::Sequential, Strategy::Parallel] {
        let cfg = Config { strategy, ..Config::default() };
        group.bench_with_input(BenchmarkId::new("example", format!("{strategy:?}")), &cfg, |b, cfg| {
            b.iter(|| black_box(emit_presentation(&g, &lat, cfg).unwrap().pres.relators.len()))
        });
    }
    group.finish();
}

criterion_group!(benches, relator_verification, presentation);
criterion_main!(benches);
