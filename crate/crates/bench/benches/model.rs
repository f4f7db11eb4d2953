use criterion::{criterion_group, criterion_main, Criterion};
use semilin_core::relations::{leq, rel_b, rel_c};
use semilin_core::sample::Sampler;
use semilin_core::transform::{flatten, reroot, RerootSpec};
use std::hint::black_box;

fn relations(c: &mut Criterion) {
    let pts = Sampler::new(0).set(30);
    c.bench_function("leq/30x30", |b| {
        b.iter(|| pts.iter().flat_map(|x| pts.iter().map(move |y| leq(x, y))).filter(|&v| v).count())
    });
    let trio = &pts[..12];
    c.bench_function("C and B/12^3", |b| {
        b.iter(|| {
            let mut n = 0;
            for x in trio {
                for y in trio {
                    for z in trio {
                        n += rel_c(x, y, z) as usize + rel_b(x, y, z) as usize;
                    }
                }
            }
            black_box(n)
        })
    });
}

fn transformations(c: &mut Criterion) {
    let pts = Sampler::new(1).set(8);
    c.bench_function("reroot/8", |b| b.iter(|| reroot(black_box(&pts), &RerootSpec::Pivot(pts[3].clone())).unwrap()));
    c.bench_function("flatten/8", |b| b.iter(|| flatten(black_box(&pts)).unwrap()));
}

criterion_group!(benches, relations, transformations);
criterion_main!(benches);
