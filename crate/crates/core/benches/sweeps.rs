use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use resurgence::engine::{dd_window, rho_hat};
use resurgence::fatpoints::MonomialFatScheme;
use resurgence::newton::closure_of_power;
use resurgence::par;
use resurgence::rational::frac;

fn four_points() -> MonomialFatScheme {
    MonomialFatScheme::coordinate_points(3, &[(0, 1), (1, 1), (2, 1), (3, 1)]).unwrap()
}

fn fat_122() -> MonomialFatScheme {
    MonomialFatScheme::coordinate_points(2, &[(0, 1), (1, 2), (2, 2)]).unwrap()
}

// 1 = a one-worker pool (sequential), 0 = the global pool.
const POOLS: [(usize, &str); 2] = [(1, "single"), (0, "pool")];

fn closure(c: &mut Criterion) {
    let ideal = four_points().ideal().unwrap();
    let mut g = c.benchmark_group("closure_of_power");
    g.sample_size(10);
    for (threads, label) in POOLS {
        g.bench_with_input(BenchmarkId::new(label, 28), &ideal, |b, i| {
            par::with_threads(threads, || b.iter(|| closure_of_power(black_box(i), 28).unwrap()))
        });
    }
    g.finish();
}

fn symbolic(c: &mut Criterion) {
    let z = fat_122();
    let mut g = c.benchmark_group("symbolic_power");
    g.sample_size(10);
    for (threads, label) in POOLS {
        g.bench_with_input(BenchmarkId::new(label, 24), &z, |b, z| {
            par::with_threads(threads, || b.iter(|| z.symbolic_power(black_box(24)).unwrap()))
        });
    }
    g.finish();
}

fn window(c: &mut Criterion) {
    let z = fat_122();
    let rh = rho_hat(&z, 8).unwrap();
    let eps = frac(1, 12);
    let mut g = c.benchmark_group("dd_window");
    g.sample_size(10);
    for (threads, label) in POOLS {
        g.bench_function(label, |b| par::with_threads(threads, || b.iter(|| dd_window(&z, &rh, &eps).unwrap())));
    }
    g.finish();
}

criterion_group!(sweeps, closure, symbolic, window);
criterion_main!(sweeps);
