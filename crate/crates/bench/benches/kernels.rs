use std::hint::black_box;

use camc_bench::{trig_samples, type1_fixture};
use camc_core::{
    dirichlet_energy, fourier_project, integrate, lambda_field, CyclicFamilyParams, CyclicOdeState, FamilyKind,
    JetMode, OdeMode,
};
use criterion::{criterion_group, criterion_main, Criterion};

fn lambda_fields(c: &mut Criterion) {
    let e = dirichlet_energy();
    let (surf, grid) = type1_fixture(101, 64);
    c.bench_function("lambda_field analytic 101x64", |b| b.iter(|| lambda_field(black_box(&surf), &e, &grid)));
    let fd = surf.with_jet_mode(JetMode::FiniteDifference { step: 1e-4 }).unwrap();
    c.bench_function("lambda_field fd 101x64", |b| b.iter(|| lambda_field(black_box(&fd), &e, &grid)));
}

fn rk4(c: &mut Criterion) {
    let p = CyclicFamilyParams::new(FamilyKind::TypeIII, 1.0, 0.0, 1.0).unwrap();
    let init = CyclicOdeState::from_profile(&p, 0.5).unwrap();
    c.bench_function("rk4 type3 1500 steps", |b| {
        b.iter(|| integrate(black_box(init), 1.0, 0.0, OdeMode::Anisotropic, 2.0, 1e-3))
    });
}

fn fourier(c: &mut Criterion) {
    let samples = trig_samples(64);
    c.bench_function("fourier_project 64 samples, 12 modes", |b| {
        b.iter(|| fourier_project(0.0, black_box(&samples), 12))
    });
}

criterion_group!(benches, lambda_fields, rk4, fourier);
criterion_main!(benches);
