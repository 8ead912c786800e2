use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use nbessel::bessel::{alternating_diagonal, gamma_meet};
use nbessel::polyomino::{heap_census, series_via_bessel, PolyominoWindow};
use nbessel::specialize::{csv_a_brute, csv_a_series, fr_compare};
use nbessel::theta::{koszul_check, theta_eulerian};
use nbessel::{Basis, Composition, FrSeries, FrVariant, FrWindow, NsymElement, Relation};

fn conversions(c: &mut Criterion) {
    let mut g = c.benchmark_group("convert_ribbons_to_S");
    for n in [4usize, 6, 8] {
        let f = Composition::all(n).fold(NsymElement::zero(Basis::R), |acc, i| {
            acc.add(&NsymElement::ribbon(i))
        });
        g.bench_with_input(BenchmarkId::from_parameter(n), &f, |b, f| {
            b.iter(|| black_box(f).convert(Basis::S))
        });
    }
    g.finish();
}

fn coproduct(c: &mut Criterion) {
    let i = Composition::new(&[2, 1, 2, 1]).unwrap();
    c.bench_function("gamma_meet R[2,1,2,1]", |b| {
        b.iter(|| gamma_meet(black_box(&NsymElement::ribbon(i))))
    });
}

fn inversion(c: &mut Criterion) {
    let mut g = c.benchmark_group("invert_alternating_diagonal");
    for order in [4usize, 6] {
        let s = alternating_diagonal(Basis::L, order);
        g.bench_with_input(BenchmarkId::from_parameter(order), &s, |b, s| {
            b.iter(|| s.invert().unwrap())
        });
    }
    g.finish();
}

fn csv_counts(c: &mut Criterion) {
    let mut g = c.benchmark_group("a_n");
    g.bench_function("brute n=6", |b| {
        b.iter(|| csv_a_brute(black_box(6)).unwrap())
    });
    g.bench_function("series n=6", |b| {
        b.iter(|| csv_a_series(black_box(6)).unwrap())
    });
    g.finish();
}

fn words(c: &mut Criterion) {
    let th = Relation::seeded(3, 7);
    c.bench_function("koszul m=3 n=5", |b| {
        b.iter(|| koszul_check(5, black_box(&th)))
    });
    c.bench_function("theta_eulerian m=3 n=5", |b| {
        b.iter(|| theta_eulerian(5, black_box(&th)).unwrap())
    });
}

fn five_parameter(c: &mut Criterion) {
    let w = FrWindow::default();
    c.bench_function("fr first n=4", |b| {
        b.iter(|| fr_compare(FrSeries::First, FrVariant::Derived, black_box(4), &w).unwrap())
    });
}

fn polyominoes(c: &mut Criterion) {
    let window = PolyominoWindow {
        max_width: 3,
        max_area: 8,
        max_j: 8,
    };
    let mut g = c.benchmark_group("polyomino");
    g.sample_size(10);
    g.bench_function("series width<=3 area<=8", |b| {
        b.iter(|| series_via_bessel(black_box(&window)).unwrap())
    });
    g.bench_function("heap census n=4 max_j=3", |b| {
        b.iter(|| heap_census(black_box(4), 3).unwrap())
    });
    g.finish();
}

criterion_group!(
    benches,
    conversions,
    coproduct,
    inversion,
    csv_counts,
    words,
    five_parameter,
    polyominoes
);
criterion_main!(benches);
