use criterion::{criterion_group, criterion_main, Criterion};
use indorder::{brute_force_polynomial, independence_polynomial, trees::all_trees};
use indorder_bench::polynomial_inputs;
use std::hint::black_box;

fn polynomials(c: &mut Criterion) {
    let mut group = c.benchmark_group("independence_polynomial");
    for (name, g) in polynomial_inputs() {
        group.bench_function(name, |b| b.iter(|| independence_polynomial(black_box(&g))));
    }
    group.finish();

    let g = indorder::parse_graph("C18").unwrap();
    c.bench_function("brute_force/C18", |b| {
        b.iter(|| brute_force_polynomial(black_box(&g)))
    });
}

fn corpus(c: &mut Criterion) {
    c.bench_function("all_trees/12", |b| {
        b.iter(|| all_trees(black_box(12)).unwrap())
    });
}

criterion_group!(benches, polynomials, corpus);
criterion_main!(benches);
