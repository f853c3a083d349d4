//! Compares the data-parallel scan path against the always-compiled
//! sequential fallback on the crate's heaviest workloads.
//!
//! With the default `parallel` feature the dispatching functions use rayon,
//! so each group shows rayon vs the `_seq` primitive on identical work.
//! Build with `--no-default-features` to confirm both sides coincide.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};

use gyro::exec;
use gyro::models::{model_identity_sampler, ModelKind};
use gyro::search::{collect_loops, filter_gyrogroups, generate_gyrogroups};
use gyro::{axioms, fixtures, subgyro};

fn bench_axiom_scan(c: &mut Criterion) {
    let g6 = fixtures::s3();
    let mut group = c.benchmark_group("axiom_scan_s3");
    group.bench_function("dispatch", |b| {
        b.iter(|| axioms::verify_axioms(&g6));
    });
    // The sequential baseline for the G3 quadruple scan, the dominant cost.
    let n = g6.order();
    group.bench_function("seq_g3", |b| {
        b.iter(|| {
            exec::find_min_seq(n * n, |p| {
                let (x, y) = (p / n, p % n);
                let gyr = g6.gyr_map(x, y);
                for u in 0..n {
                    for v in 0..n {
                        if gyr.apply(g6.op(u, v)) != g6.op(gyr.apply(u), gyr.apply(v)) {
                            return Some((x, y, u, v));
                        }
                    }
                }
                None
            })
        });
    });
    group.finish();
}

fn bench_loop_filter(c: &mut Criterion) {
    let mut group = c.benchmark_group("order6_generation");
    group.sample_size(10);
    group.bench_function("pruned_generator", |b| {
        b.iter(|| generate_gyrogroups(6, false).unwrap().len());
    });
    group.bench_function("naive_filter", |b| {
        b.iter_batched(
            || collect_loops(6, false).unwrap(),
            |loops| filter_gyrogroups(loops).len(),
            BatchSize::LargeInput,
        );
    });
    group.finish();
}

fn bench_subset_scan(c: &mut Criterion) {
    let g = fixtures::s3();
    let mut group = c.benchmark_group("subgyrogroup_enumeration");
    group.bench_function("dispatch", |b| {
        b.iter(|| subgyro::enumerate_subgyrogroups(&g).subgroups.len());
    });
    group.finish();
}

fn bench_model_sampler(c: &mut Criterion) {
    let mut group = c.benchmark_group("model_sampler_10k");
    group.sample_size(20);
    group.bench_function("mobius", |b| {
        b.iter(|| model_identity_sampler(ModelKind::Mobius, 10_000, 1e-9, 7).unwrap());
    });
    group.bench_function("einstein", |b| {
        b.iter(|| model_identity_sampler(ModelKind::Einstein, 10_000, 1e-9, 7).unwrap());
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_axiom_scan,
    bench_loop_filter,
    bench_subset_scan,
    bench_model_sampler
);
criterion_main!(benches);
