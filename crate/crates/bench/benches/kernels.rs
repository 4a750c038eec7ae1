use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};
use num_complex::Complex64;
use twistlab_core::characters::{enumerate_characters, factor_modulus, Selection};
use twistlab_core::coefficients::DeltaTable;
use twistlab_core::lfunctions::{AfeEvaluator, AfeWeight, GammaFactorSpec, DEFAULT_TAIL_TOL};
use twistlab_core::moments::{moment_primitive, plancherel_moment};
use twistlab_core::ramare::{choose_parameters, decompose};
use twistlab_core::MultiplicativeCoefficients;

fn characters(c: &mut Criterion) {
    c.bench_function("enumerate primitive characters mod 1000", |b| {
        b.iter(|| {
            let m = Arc::new(factor_modulus(black_box(1000)).unwrap());
            enumerate_characters(&m, Selection::PrimitiveOnly).unwrap().len()
        })
    });
}

fn coefficients(c: &mut Criterion) {
    c.bench_function("tau(n) for n <= 10^5", |b| b.iter(|| DeltaTable::new(black_box(100_000)).unwrap()));
    let tau3 = MultiplicativeCoefficients::tau_d(3);
    c.bench_function("tau_3 table to 10^6", |b| b.iter(|| tau3.table(black_box(1_000_000)).unwrap()));
}

fn moments(c: &mut Criterion) {
    let f = MultiplicativeCoefficients::liouville();
    let a: Vec<Complex64> = f.table(100_000).unwrap()[1..].to_vec();
    c.bench_function("plancherel moment q = 1000, X = 10^5", |b| b.iter(|| plancherel_moment(black_box(&a), 1000)));
    c.bench_function("primitive moment q = 101, X = 10^5", |b| b.iter(|| moment_primitive(&f, 101, black_box(100_000)).unwrap()));
}

fn ramare(c: &mut Criterion) {
    let f = MultiplicativeCoefficients::liouville();
    let plan = choose_parameters(50_000, 0.0, 1.0, 0.1).unwrap();
    let chi = Arc::new(factor_modulus(101).unwrap()).character(1).unwrap();
    c.bench_function("decompose X = 5*10^4", |b| b.iter(|| decompose(&f, &chi, black_box(&plan)).unwrap()));
}

fn afe(c: &mut Criterion) {
    let spec = GammaFactorSpec::dirichlet(40, 1);
    c.bench_function("AFE weight mod 40", |b| b.iter(|| AfeWeight::new(black_box(&spec), 0.5).unwrap()));
    let mut group = c.benchmark_group("afe-tables");
    group.sample_size(10);
    group.bench_function("AFE evaluator mod 40", |b| {
        b.iter(|| AfeEvaluator::new(black_box(&spec), 0.5, DEFAULT_TAIL_TOL).unwrap().terms())
    });
    group.finish();
}

criterion_group!(kernels, characters, coefficients, moments, ramare, afe);
criterion_main!(kernels);
