//! Sequential against data-parallel execution of the heavier kernels.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use expow_core::arith::{Rational, Var};
use expow_core::exec::{self, Execution};
use expow_core::expseries::TruncatedSeries;
use expow_core::sample::{random_poly_tuple, rng};
use expow_core::verify::{ax_check, relation_search_with};

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn batch(n: usize, order: u32) -> Vec<Vec<TruncatedSeries<Rational>>> {
    let vars = [Var::series("s"), Var::series("t")];
    let mut r = rng(7);
    (0..n)
        .map(|_| random_poly_tuple(&mut r, &vars, order, 2, 3))
        .collect()
}

fn relation_columns(c: &mut Criterion) {
    let vars = [Var::series("s"), Var::series("t")];
    let s = TruncatedSeries::<Rational>::var(&vars, 16, &vars[0]).unwrap();
    let t = TruncatedSeries::<Rational>::var(&vars, 16, &vars[1]).unwrap();
    let gens = vec![s.add(&t.mul(&t)), t.clone(), s.mul(&t)];
    let mut g = c.benchmark_group("relation_search");
    for (name, mode) in MODES {
        g.bench_with_input(BenchmarkId::new(name, "D=4"), &gens, |b, gens| {
            b.iter(|| relation_search_with(gens, 4, mode).unwrap())
        });
    }
    g.finish();
}

fn ax_batch(c: &mut Criterion) {
    let instances = batch(8, 12);
    let mut g = c.benchmark_group("ax_batch");
    g.sample_size(10);
    for (name, mode) in MODES {
        g.bench_with_input(
            BenchmarkId::new(name, instances.len()),
            &instances,
            |b, xs| {
                b.iter(|| {
                    exec::map(xs, mode, |z| {
                        ax_check(z, 3, Execution::Sequential).unwrap().verdict
                    })
                })
            },
        );
    }
    g.finish();
}

criterion_group!(benches, relation_columns, ax_batch);
criterion_main!(benches);
