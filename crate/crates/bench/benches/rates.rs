use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use morse_entropy::counter::CountKind;
use morse_entropy::rate::rate_at;
use morse_entropy::thermo::{laplace_check, legendre_epsilon};
use morse_entropy::{betti_curve, epsilon_curve};
use morse_entropy_bench::five_atom_spectrum;

fn solver(c: &mut Criterion) {
    let spec = five_atom_spectrum();
    c.bench_function("maxent_rate/five_atom", |b| {
        b.iter(|| rate_at(&spec, CountKind::Critical, black_box(0.3)).unwrap())
    });
    c.bench_function("legendre_epsilon/five_atom", |b| {
        b.iter(|| legendre_epsilon(&spec, black_box(0.3)).unwrap())
    });
}

fn curves(c: &mut Criterion) {
    let spec = five_atom_spectrum();
    c.bench_function("epsilon_curve/101", |b| {
        b.iter(|| epsilon_curve(black_box(&spec), 101).unwrap())
    });
    c.bench_function("betti_curve/101", |b| {
        b.iter(|| betti_curve(black_box(&spec), 101).unwrap())
    });
}

fn laplace(c: &mut Criterion) {
    c.bench_function("laplace_check/4", |b| {
        b.iter(|| laplace_check(black_box(&[10.0, 100.0, 1000.0, 10000.0]), 256).unwrap())
    });
}

criterion_group!(benches, solver, curves, laplace);
criterion_main!(benches);
