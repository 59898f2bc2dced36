//! Throughput of the exact arithmetic, the canonical decomposition and the
//! equivalence and symmetry searches built on it.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use flatspin_bench::{dense_element, family_fixtures};
use flatspin_core::{
    diagonal_triangulation, equivalent_up_to, incircle, CanonicalDecomposition, CycloNum, Mode,
};

fn arithmetic(c: &mut Criterion) {
    let mut group = c.benchmark_group("cyclotomic");
    for order in [7u32, 16, 24] {
        let a = dense_element(order);
        let b = a.conj() + CycloNum::one(order);
        group.bench_with_input(BenchmarkId::new("mul", order), &order, |bench, _| bench.iter(|| black_box(&a) * black_box(&b)));
        group.bench_with_input(BenchmarkId::new("inverse", order), &order, |bench, _| bench.iter(|| black_box(&a).inverse()));
        group.bench_with_input(BenchmarkId::new("sign_imag", order), &order, |bench, _| bench.iter(|| black_box(&a).sign_imag()));
    }
    let z = |j| CycloNum::root_of_unity(12, j);
    let (p, q, r, s) = (z(0), z(3), z(7), z(10));
    group.bench_function("incircle cocircular", |bench| bench.iter(|| incircle(&p, &q, &r, black_box(&s))));
    group.finish();
}

fn decomposition(c: &mut Criterion) {
    let mut group = c.benchmark_group("canonical");
    group.sample_size(20);
    for genus in [2u32, 4] {
        for (spec, s) in family_fixtures(genus) {
            group.bench_with_input(BenchmarkId::new("decompose", spec.surface_name()), &s, |bench, s| {
                bench.iter(|| CanonicalDecomposition::of(black_box(s)))
            });
        }
    }
    group.finish();
}

fn searches(c: &mut Criterion) {
    let mut group = c.benchmark_group("search");
    group.sample_size(20);
    for (spec, s) in family_fixtures(3) {
        let name = spec.surface_name();
        let cd = CanonicalDecomposition::of(&s);
        let eigenvalue = spec.eigenvalue();
        group.bench_function(BenchmarkId::new("find_symmetry", &name), |bench| bench.iter(|| cd.find_symmetry(black_box(&eigenvalue))));
        group.bench_function(BenchmarkId::new("hyperelliptic", &name), |bench| bench.iter(|| cd.hyperelliptic_involution()));
        let rotated = s.transform(&CycloNum::root_of_unity(4 * spec.rhombi(), 1)).unwrap();
        group.bench_function(BenchmarkId::new("rotation equivalence", &name), |bench| {
            bench.iter(|| equivalent_up_to(black_box(&s), black_box(&rotated), Mode::Rotation))
        });
        group.bench_function(BenchmarkId::new("diagonal triangulation", &name), |bench| bench.iter(|| diagonal_triangulation(black_box(&s))));
    }
    group.finish();
}

criterion_group!(benches, arithmetic, decomposition, searches);
criterion_main!(benches);
