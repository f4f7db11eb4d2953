use criterion::{criterion_group, criterion_main, Criterion};
use semilin_core::csp::{brute_force_oracle, solve, Instance};
use std::hint::black_box;

const SAT: &str = "x < y; z || y; C(z, x u); B(x, y, v)";
const UNSAT: &str = "D(x, y, u, v); D(x, u, y, v)";

fn solving(c: &mut Criterion) {
    let sat = Instance::parse(SAT).unwrap();
    let unsat = Instance::parse(UNSAT).unwrap();
    c.bench_function("solve sat/5 vars", |b| b.iter(|| solve(black_box(&sat)).unwrap()));
    c.bench_function("solve unsat/4 vars", |b| b.iter(|| solve(black_box(&unsat)).unwrap()));
    let mut g = c.benchmark_group("oracle");
    g.sample_size(10);
    g.bench_function("unsat/4 vars", |b| b.iter(|| brute_force_oracle(black_box(&unsat)).unwrap()));
    g.finish();
}

criterion_group!(benches, solving);
criterion_main!(benches);
