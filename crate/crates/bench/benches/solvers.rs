use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rstab_core::approx::solve_with_budget;
use rstab_core::exact::{opt_exact, SearchBudget};
use rstab_core::generators::{gen_mcgraph, gen_planted};
use rstab_core::reduction::build;

fn approx_planted(c: &mut Criterion) {
    let mut group = c.benchmark_group("approx_planted");
    for k in 2..=6 {
        let (inst, _) = gen_planted(k, 50, 100, k as u64).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(k), &inst, |b, inst| {
            b.iter(|| solve_with_budget(black_box(inst), k).unwrap())
        });
    }
    group.finish();
}

fn exact_planted(c: &mut Criterion) {
    let mut group = c.benchmark_group("exact_planted");
    for k in 2..=5 {
        let (inst, _) = gen_planted(k, 25, 100, k as u64).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(k), &inst, |b, inst| {
            b.iter(|| opt_exact(black_box(inst), SearchBudget::new(16)).unwrap())
        });
    }
    group.finish();
}

fn exact_reduced(c: &mut Criterion) {
    let mut group = c.benchmark_group("exact_reduced");
    group.sample_size(10);
    for r in 2..=3 {
        let (g, _) = gen_mcgraph(2, r, 1, 2, 3, true).unwrap();
        let red = build(&g).unwrap();
        group.bench_with_input(BenchmarkId::new("k2", r), &red.inst, |b, inst| {
            b.iter(|| opt_exact(black_box(inst), SearchBudget::new(8)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, approx_planted, exact_planted, exact_reduced);
criterion_main!(benches);
