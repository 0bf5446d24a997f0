use criterion::{black_box, criterion_group, criterion_main, Criterion};

use openmirror::amodel::f_q;
use openmirror::bmodel::w0_series;
use openmirror::catalog;
use openmirror::mirror::build_mirror_map;
use openmirror::TruncatedSeries;

fn series_mul(c: &mut Criterion) {
    let (g, b) = catalog::phase("KF0", "I").unwrap();
    let grading = g.default_grading(Some(&b)).unwrap();
    let w0 = w0_series(&g, &b, 1, &grading, 8).unwrap();
    let unit = TruncatedSeries::one(grading.clone(), 8).add(&w0.filter(|e| e.w > 0)).unwrap();
    c.bench_function("series mul KF0 order 8", |bench| {
        bench.iter(|| black_box(&unit).mul(black_box(&unit)).unwrap())
    });
}

fn superpotential(c: &mut Criterion) {
    let (g, b) = catalog::phase("KdP1", "I").unwrap();
    let grading = g.default_grading(Some(&b)).unwrap();
    c.bench_function("W0 KdP1 I order 8", |bench| {
        bench.iter(|| w0_series(&g, &b, black_box(2), &grading, 8).unwrap())
    });
}

fn amodel(c: &mut Criterion) {
    let (g, b) = catalog::phase("KdP1", "I").unwrap();
    let grading = g.default_grading(Some(&b)).unwrap();
    c.bench_function("F_q KdP1 I order 8", |bench| {
        bench.iter(|| f_q(&g, &b, black_box(2), &grading, 8).unwrap())
    });
}

fn mirror_map(c: &mut Criterion) {
    let (g, b) = catalog::phase("KdP2", "I").unwrap();
    let grading = g.default_grading(Some(&b)).unwrap();
    c.bench_function("mirror map KdP2 I order 8", |bench| {
        bench.iter(|| build_mirror_map(&g, &b, black_box(1), &grading, 8).unwrap())
    });
}

criterion_group!(benches, series_mul, superpotential, amodel, mirror_map);
criterion_main!(benches);
