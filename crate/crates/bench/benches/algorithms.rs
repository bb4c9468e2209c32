use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rigikit_bench::{packing_instance, rigid_graph, slope_problem, SIZES};
use rigikit_core::{
    bounded_components, decide_global_rigidity, generic_rank, realize_from_slopes, reduce_fully, spanning_tree_packing,
    Settings,
};

fn rank(c: &mut Criterion) {
    let mut group = c.benchmark_group("generic_rank");
    for n in SIZES {
        let g = rigid_graph(n, 1);
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| {
            b.iter(|| generic_rank(black_box(g), None, &Settings::default()))
        });
    }
    group.finish();
}

fn packing(c: &mut Criterion) {
    let mut group = c.benchmark_group("spanning_tree_packing");
    for n in SIZES {
        let m = packing_instance(n, 2);
        group.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| {
            b.iter(|| spanning_tree_packing(black_box(m)))
        });
    }
    group.finish();
}

fn bounded(c: &mut Criterion) {
    let mut group = c.benchmark_group("bounded_components");
    for n in SIZES {
        let g = rigid_graph(n, 3);
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| {
            b.iter(|| bounded_components(black_box(g), &Settings::default()))
        });
    }
    group.finish();
}

fn reduction_and_decision(c: &mut Criterion) {
    let mut group = c.benchmark_group("reduce_fully");
    group.sample_size(20);
    for n in SIZES {
        let g = rigid_graph(n, 4);
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| {
            b.iter(|| reduce_fully(black_box(g), &Settings::default()))
        });
    }
    group.finish();

    let mut group = c.benchmark_group("decide");
    group.sample_size(20);
    for n in SIZES {
        let g = rigid_graph(n, 4);
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| {
            b.iter(|| decide_global_rigidity(black_box(g), &Settings::default()))
        });
    }
    group.finish();
}

fn realize(c: &mut Criterion) {
    let mut group = c.benchmark_group("realize_from_slopes");
    group.sample_size(20);
    for n in [4, 8, 12] {
        let p = slope_problem(n, 5);
        group.bench_with_input(BenchmarkId::from_parameter(n), &p, |b, p| {
            b.iter(|| realize_from_slopes(black_box(p), 0).expect("tight instance"))
        });
    }
    group.finish();
}

criterion_group!(benches, rank, packing, bounded, reduction_and_decision, realize);
criterion_main!(benches);
