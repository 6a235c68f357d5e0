use std::hint::black_box;

use betti_split::enumerate::{
    decompositions, is_trivially_decomposable, is_trivially_decomposable_general,
};
use betti_split::hochster::graded_betti;
use betti_split::homology::{reduced_betti_all_uncached, ChainComplexData};
use betti_split::splitting::{
    is_betti_splitting_direct, is_betti_splitting_recursive, is_homology_splitting,
};
use betti_split::{corpus, Field};
use criterion::{criterion_group, criterion_main, Criterion};

const FIELDS: [Field; 3] = [Field::Q, Field::Prime(2), Field::Prime(65537)];

fn homology(c: &mut Criterion) {
    let mut group = c.benchmark_group("homology");
    for name in ["klein", "moore3", "s3"] {
        let cx = corpus::load(name).unwrap().complex;
        for field in FIELDS {
            group.bench_function(format!("{name}/{field}"), |b| {
                b.iter(|| reduced_betti_all_uncached(black_box(&cx), field))
            });
        }
    }
    let cx = corpus::load("moore3").unwrap().complex;
    group.bench_function("moore3/boundary-matrices", |b| {
        b.iter(|| ChainComplexData::new(black_box(&cx)))
    });
    group.finish();
}

fn betti_tables(c: &mut Criterion) {
    let cx = corpus::load("torus7").unwrap().complex;
    c.bench_function("graded_betti/torus7", |b| {
        b.iter(|| graded_betti(black_box(&cx), Field::Q))
    });
}

fn checks(c: &mut Criterion) {
    let cx = corpus::load("klein").unwrap().complex;
    let some: Vec<_> = decompositions(&cx).unwrap().step_by(997).take(32).collect();
    let mut group = c.benchmark_group("check/klein");
    group.bench_function("homology", |b| {
        b.iter(|| {
            some.iter()
                .filter(|d| is_homology_splitting(&cx, d, Field::Q).unwrap().verdict)
                .count()
        })
    });
    group.bench_function("betti_direct", |b| {
        b.iter(|| {
            some.iter()
                .filter(|d| is_betti_splitting_direct(&cx, d, Field::Q).unwrap().verdict)
                .count()
        })
    });
    group.bench_function("betti_recursive", |b| {
        b.iter(|| {
            some.iter()
                .filter(|d| {
                    is_betti_splitting_recursive(&cx, d, Field::Q)
                        .unwrap()
                        .verdict
                })
                .count()
        })
    });
    group.finish();
}

fn scans(c: &mut Criterion) {
    let mut group = c.benchmark_group("trivially_decomposable");
    group.sample_size(10);
    let rp2 = corpus::load("rp2").unwrap().complex;
    group.bench_function("rp2/union-find", |b| {
        b.iter(|| is_trivially_decomposable(&rp2, Field::Q).unwrap())
    });
    group.bench_function("rp2/homology", |b| {
        b.iter(|| is_trivially_decomposable_general(&rp2, Field::Q).unwrap())
    });
    let moore = corpus::load("moore3").unwrap().complex;
    group.bench_function("moore3/union-find", |b| {
        b.iter(|| is_trivially_decomposable(&moore, Field::Q).unwrap())
    });
    group.finish();
}

criterion_group!(benches, homology, betti_tables, checks, scans);
criterion_main!(benches);
