use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use edgeplan_bench::sweep_params;
use edgeplan_core::{aundt, optimal_density, user_ndt};

fn bench_closed_form(c: &mut Criterion) {
    let params = sweep_params();
    c.bench_function("aundt_sweep_5_to_50", |b| {
        b.iter(|| {
            let mut acc = 0.0;
            for m in 5..=50 {
                acc += aundt(black_box(&params), m).unwrap();
            }
            acc
        })
    });
    c.bench_function("user_ndt_cluster_of_50", |b| {
        b.iter(|| {
            (1..=50)
                .map(|j| user_ndt(black_box(&params), 50, j).unwrap().total)
                .sum::<f64>()
        })
    });
}

fn bench_optimizer(c: &mut Criterion) {
    let params = sweep_params();
    c.bench_function("optimal_density", |b| {
        b.iter(|| optimal_density(black_box(&params), 200).unwrap())
    });
}

criterion_group!(benches, bench_closed_form, bench_optimizer);
criterion_main!(benches);
