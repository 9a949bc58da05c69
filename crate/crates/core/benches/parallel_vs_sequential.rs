use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use stabletree::crt::{default_stride, extremal_profile, sample_normalized_excursion};
use stabletree::laplace::mstar_table;
use stabletree::sampler::{sample_positive_stable, RngStream};
use stabletree::{Exec, StableIndex};
use std::hint::black_box;

const POLICIES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn table_build(c: &mut Criterion) {
    let mut g = c.benchmark_group("mstar_table");
    g.sample_size(10);
    for gamma in [2.0, 1.5] {
        let idx = StableIndex::new(gamma).unwrap();
        for (name, exec) in POLICIES {
            g.bench_with_input(BenchmarkId::new(name, gamma), &exec, |b, &exec| {
                b.iter(|| mstar_table(black_box(idx), exec).unwrap())
            });
        }
    }
    g.finish();
}

fn extremal(c: &mut Criterion) {
    let n = 1 << 15;
    let tree = sample_normalized_excursion(n, &mut RngStream::new(1, 0)).unwrap();
    let radii = [0.01, 0.03, 0.1];
    let mut g = c.benchmark_group("extremal_profile");
    g.sample_size(10);
    for (name, exec) in POLICIES {
        g.bench_function(name, |b| {
            b.iter(|| extremal_profile(&tree, black_box(&radii), default_stride(n), exec).unwrap())
        });
    }
    g.finish();
}

fn stable_draws(c: &mut Criterion) {
    let mut g = c.benchmark_group("positive_stable_1e5");
    for (name, exec) in POLICIES {
        g.bench_function(name, |b| {
            b.iter(|| sample_positive_stable(0.5, 2.0, &mut RngStream::new(3, 0), 100_000, exec).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, table_build, extremal, stable_draws);
criterion_main!(benches);
