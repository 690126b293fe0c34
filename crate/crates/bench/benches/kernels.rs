//! Benchmarks for the hot kernels: the exact simplex, degree programs, ray
//! enumeration and the witness constructions.

use criterion::{criterion_group, criterion_main, Criterion};
use intersub_core::catalog::{fivedim_space, random_measurement, square_space};
use intersub_core::lp::{solve, LinearProgram, Sense};
use intersub_core::rat::{one, rat, zero};
use intersub_core::{
    cis_degree, cone, intersubjectivity_degree, quantum, sharpness_degree, witness,
};
use std::hint::black_box;

fn lp_solve(c: &mut Criterion) {
    // a dense-ish exact LP of moderate size
    let n = 12;
    let mut lp = LinearProgram::new(Sense::Maximize, (0..n).map(|i| rat(i as i64 + 1, 3)).collect());
    for j in 0..n {
        lp.bound_lower(j, zero());
    }
    for i in 0..n {
        let row = (0..n)
            .map(|j| rat(((i * j) % 5) as i64 + 1, 2))
            .collect::<Vec<_>>();
        lp.le(row, rat(7, 2));
    }
    c.bench_function("lp_exact_simplex_12x12", |b| {
        b.iter(|| black_box(solve(black_box(&lp)).unwrap()))
    });
}

fn degree_programs(c: &mut Criterion) {
    let square = square_space().unwrap();
    let m3 = random_measurement(&square, 3, 7).unwrap();
    c.bench_function("intersubjectivity_degree_square_3", |b| {
        b.iter(|| black_box(intersubjectivity_degree(black_box(&m3)).unwrap()))
    });
    c.bench_function("sharpness_degree_square_3", |b| {
        b.iter(|| black_box(sharpness_degree(black_box(&m3)).unwrap()))
    });
    c.bench_function("cis_degree_square_3", |b| {
        b.iter(|| black_box(cis_degree(black_box(&m3)).unwrap()))
    });

    let fivedim = fivedim_space().unwrap();
    let entry = intersub_core::load_example("fivedim-es-ext").unwrap();
    let m4 = entry.measurement.unwrap();
    c.bench_function("cis_degree_fivedim_4", |b| {
        b.iter(|| black_box(cis_degree(black_box(&m4)).unwrap()))
    });
    c.bench_function("nonneg_cone_rays_fivedim", |b| {
        b.iter(|| black_box(cone::nonneg_cone_rays(black_box(&fivedim)).unwrap()))
    });
}

fn constructions(c: &mut Criterion) {
    let square = square_space().unwrap();
    c.bench_function("three_outcome_witness_square", |b| {
        b.iter(|| black_box(witness::three_outcome_witness(black_box(&square)).unwrap()))
    });
    let poly = quantum::bloch_polygon_model(16).unwrap();
    let m = quantum::embed_unbiased(&poly, &rat(3, 5), &zero()).unwrap();
    let _ = one();
    c.bench_function("polygon16_degree", |b| {
        b.iter(|| black_box(intersubjectivity_degree(black_box(&m)).unwrap()))
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = lp_solve, degree_programs, constructions
}
criterion_main!(benches);
