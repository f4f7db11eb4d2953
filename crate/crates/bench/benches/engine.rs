use criterion::{criterion_group, criterion_main, Criterion};
use semilin_core::convex::convex_extensions;
use semilin_core::engine::{embed_structure, homogeneity_extend, PartialIso};
use semilin_core::enumerate::{age_classes, enumerate_age_structures};
use semilin_core::sample::Sampler;
use semilin_core::structure::induced_structure;
use std::hint::black_box;

fn enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate");
    g.sample_size(10);
    g.bench_function("age structures n=5", |b| b.iter(|| enumerate_age_structures(black_box(5)).unwrap()));
    g.bench_function("age classes n=5", |b| b.iter(|| age_classes(black_box(5)).unwrap()));
    g.finish();
}

fn embedding(c: &mut Criterion) {
    let structures = enumerate_age_structures(5).unwrap();
    c.bench_function("embed all n=5", |b| b.iter(|| structures.iter().map(|s| embed_structure(s).unwrap().len()).sum::<usize>()));
    c.bench_function("convex extensions all n=5", |b| b.iter(|| structures.iter().map(|s| convex_extensions(s).unwrap().len()).sum::<usize>()));

    let pts = Sampler::new(2).set(8);
    let (dom, rest) = pts.split_at(5);
    let target = embed_structure(&induced_structure(dom).unwrap()).unwrap();
    let rho = PartialIso::new(dom.to_vec(), target).unwrap();
    c.bench_function("extend 5+3", |b| b.iter(|| homogeneity_extend(black_box(&rho), rest).unwrap()));
}

criterion_group!(benches, enumeration, embedding);
criterion_main!(benches);
