use std::hint::black_box;

use bcklab::catalog::{canonical_form, enumerate_bck, naive_oracle};
use bcklab::fixtures::c4;
use bcklab::states::enumerate_state_operators;
use bcklab::suite::run_suite;
use bcklab::{isomorphic, Limits, StateKind};
use bcklab_bench::{catalog, relabeled_pairs};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn generation(c: &mut Criterion) {
    let limits = Limits::default();
    let mut g = c.benchmark_group("enumerate_bck");
    for n in [3, 4, 5] {
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| enumerate_bck(black_box(n), &limits).unwrap())
        });
    }
    g.finish();
    c.bench_function("naive_oracle/3", |b| {
        b.iter(|| naive_oracle(black_box(3), &limits).unwrap())
    });
}

fn isomorphism(c: &mut Criterion) {
    let pairs = relabeled_pairs(&catalog(5));
    c.bench_function("isomorphic/order 5 catalog", |b| {
        b.iter(|| {
            for (x, y) in &pairs {
                black_box(isomorphic(x, y).unwrap());
            }
        })
    });
    c.bench_function("canonical_form/order 5 catalog", |b| {
        b.iter(|| {
            for (_, y) in &pairs {
                black_box(canonical_form(y));
            }
        })
    });
}

fn operators(c: &mut Criterion) {
    let limits = Limits::default();
    let a = c4();
    let mut g = c.benchmark_group("state operators on C4");
    for kind in StateKind::ALL {
        g.bench_function(kind.to_string(), |b| {
            b.iter(|| enumerate_state_operators(&a, kind, &limits).unwrap())
        });
    }
    g.finish();
}

fn suite(c: &mut Criterion) {
    let limits = Limits::default();
    let mut g = c.benchmark_group("run_suite");
    g.sample_size(10);
    for n in [3, 4] {
        let cat = catalog(n);
        g.bench_with_input(BenchmarkId::from_parameter(n), &cat, |b, cat| {
            b.iter(|| run_suite(std::slice::from_ref(cat), &limits))
        });
    }
    g.finish();
}

criterion_group!(benches, generation, isomorphism, operators, suite);
criterion_main!(benches);
