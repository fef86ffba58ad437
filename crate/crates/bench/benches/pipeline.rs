use criterion::{black_box, criterion_group, criterion_main, BatchSize, Criterion};
use cuboid_bench::{sample_pairs, split_cubics};
use cuboid_core::{
    evaluate_closed_forms, evaluate_pair, evaluate_pair_with, evaluate_param_map, rational_roots,
    run_sweep, MonicCubic, RootStrategy, SweepOptions, SweepPlan,
};

fn param_map(c: &mut Criterion) {
    let pairs = sample_pairs(50, 256);
    let mut g = c.benchmark_group("param_map");
    g.bench_function("generic", |b| {
        b.iter(|| {
            pairs
                .iter()
                .map(|p| evaluate_param_map(black_box(p)).is_ok())
                .count()
        })
    });
    g.bench_function("closed_forms", |b| {
        b.iter(|| {
            pairs
                .iter()
                .map(|p| evaluate_closed_forms(black_box(p)).is_ok())
                .count()
        })
    });
    g.finish();
}

fn roots(c: &mut Criterion) {
    let split = split_cubics(30, 256);
    let edge: Vec<MonicCubic> = sample_pairs(50, 256)
        .iter()
        .filter_map(|p| evaluate_param_map(p).ok())
        .map(|e| MonicCubic::from_symmetric(&e.e10, &e.e20, &e.e30))
        .collect();
    let mut g = c.benchmark_group("rational_roots");
    g.bench_function("split", |b| {
        b.iter(|| {
            split
                .iter()
                .map(|q| rational_roots(black_box(q)).is_ok())
                .count()
        })
    });
    g.bench_function("edge_cubics", |b| {
        b.iter(|| {
            edge.iter()
                .map(|q| rational_roots(black_box(q)).is_ok())
                .count()
        })
    });
    g.finish();
}

fn pairs(c: &mut Criterion) {
    let pairs = sample_pairs(50, 256);
    let small = sample_pairs(8, 256);
    let mut g = c.benchmark_group("evaluate_pair");
    g.bench_function("isolation", |b| {
        b.iter(|| {
            pairs
                .iter()
                .map(|p| evaluate_pair(black_box(p)).outcome)
                .count()
        })
    });
    g.bench_function("divisors_h8", |b| {
        b.iter(|| {
            small
                .iter()
                .map(|p| evaluate_pair_with(black_box(p), RootStrategy::divisors()).outcome)
                .count()
        })
    });
    g.finish();
}

fn sweep(c: &mut Criterion) {
    let plan = SweepPlan::new(6);
    c.bench_function("sweep_h6", |b| {
        b.iter_batched(
            Vec::new,
            |mut sink| {
                run_sweep(&plan, &SweepOptions::default(), &mut sink, None, |_| Ok(())).unwrap()
            },
            BatchSize::SmallInput,
        )
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(20);
    targets = param_map, roots, pairs, sweep
}
criterion_main!(benches);
