use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use cy_smoother_bench::{dense_matrix, mu_tensor, triple_model};
use cy_smoother_core::catalog::search_pairs;
use cy_smoother_core::lattice::smith_normal_form;
use cy_smoother_core::{aronhold_st, smooth, Catalog};

fn lattice(c: &mut Criterion) {
    for n in [5, 10, 15] {
        let m = dense_matrix(n);
        c.bench_function(&format!("smith_normal_form {n}x{n}"), |b| b.iter(|| smith_normal_form(black_box(&m))));
    }
}

fn engine(c: &mut Criterion) {
    let x0 = triple_model();
    c.bench_function("smooth triple example", |b| b.iter(|| smooth(black_box(&x0)).unwrap()));
    let t = mu_tensor();
    c.bench_function("aronhold S and T", |b| b.iter(|| aronhold_st(black_box(&t)).unwrap()));
    let cat = Catalog::bundled();
    c.bench_function("fano pair search", |b| b.iter(|| search_pairs(black_box(&cat), false)));
}

criterion_group!(benches, lattice, engine);
criterion_main!(benches);
