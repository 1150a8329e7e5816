use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use randic_bench::{random_graph, sample7};
use randic_core::bounds::bounds_report;
use randic_core::charpoly::{char_poly_combinatorial, randic_char_poly};
use randic_core::coulson::{coulson_vertex_energy, QuadratureConfig};
use randic_core::energy::{series_energies, vertex_energies_by, Route, SERIES_MAX_TERMS};

fn energy_routes(c: &mut Criterion) {
    let mut group = c.benchmark_group("energy");
    for n in [7, 20, 50] {
        let g = if n == 7 {
            sample7()
        } else {
            random_graph(n, n as u64)
        };
        group.bench_with_input(BenchmarkId::new("eigen", n), &g, |b, g| {
            b.iter(|| vertex_energies_by(black_box(g), Route::EigenWeights).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("abs", n), &g, |b, g| {
            b.iter(|| vertex_energies_by(black_box(g), Route::AbsDiagonal).unwrap())
        });
    }
    let g = random_graph(12, 3);
    group.bench_function("series/12", |b| {
        b.iter(|| series_energies(black_box(&g), 1e-8, SERIES_MAX_TERMS).unwrap())
    });
    group.finish();
}

fn coulson(c: &mut Criterion) {
    let cfg = QuadratureConfig::default();
    let g = sample7();
    c.bench_function("coulson/sample7-v4", |b| {
        b.iter(|| coulson_vertex_energy(black_box(&g), 3, &cfg).unwrap())
    });
}

fn charpoly(c: &mut Criterion) {
    let mut group = c.benchmark_group("charpoly");
    for n in [6, 8, 10] {
        let g = random_graph(n, 100 + n as u64);
        group.bench_with_input(BenchmarkId::new("faddeev-leverrier", n), &g, |b, g| {
            b.iter(|| randic_char_poly(black_box(g)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("elementary-subgraphs", n), &g, |b, g| {
            b.iter(|| char_poly_combinatorial(black_box(g)).unwrap())
        });
    }
    group.finish();
}

fn bounds(c: &mut Criterion) {
    let g = random_graph(20, 9);
    c.bench_function("bounds/20", |b| {
        b.iter(|| bounds_report(black_box(&g)).unwrap())
    });
}

criterion_group!(benches, energy_routes, coulson, charpoly, bounds);
criterion_main!(benches);
