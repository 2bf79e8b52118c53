use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use treetope::corpus::caterpillar;
use treetope::{
    fundamental_face_lattice, lipschitz_face_lattice, tree_to_metric, tree_to_splits, FlatLattice, SplitMatroid,
    Strategy,
};

const STRATEGIES: [(&str, Strategy); 2] = [("sequential", Strategy::Sequential), ("parallel", Strategy::Parallel)];

fn oracle(c: &mut Criterion) {
    let metric = tree_to_metric(&caterpillar(5));
    let mut group = c.benchmark_group("oracle/5-caterpillar");
    group.sample_size(10);
    for (name, strategy) in STRATEGIES {
        group.bench_with_input(BenchmarkId::new("lipschitz", name), &strategy, |b, &s| {
            b.iter(|| lipschitz_face_lattice(black_box(&metric), s).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("fundamental", name), &strategy, |b, &s| {
            b.iter(|| fundamental_face_lattice(black_box(&metric), s).unwrap())
        });
    }
    group.finish();
}

fn lattice(c: &mut Criterion) {
    let matroid = SplitMatroid::new(&tree_to_splits(&caterpillar(9)).unwrap());
    let mut group = c.benchmark_group("flat-lattice/9-caterpillar");
    group.sample_size(10);
    for (name, strategy) in STRATEGIES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &strategy, |b, &s| {
            b.iter(|| FlatLattice::with_strategy(black_box(&matroid), s))
        });
    }
    group.finish();
}

criterion_group!(benches, oracle, lattice);
criterion_main!(benches);
