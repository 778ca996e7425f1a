//! Single-worker against all-core runs of the main sweeps. Build with
//! `--no-default-features` to time the rayon-free code path.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use suffix_growth::combinatorics::omega_table;
use suffix_growth::enumerate::DEFAULT_BUDGET;
use suffix_growth::experiments::{expected_growth_montecarlo, expected_size_montecarlo, Regime};
use suffix_growth::sampling::{random_string, sample_rng};
use suffix_growth::{Alphabet, NaiveSuffixTree, Workers};

fn worker_settings() -> [(&'static str, Workers); 2] {
    [("sequential", Workers::SEQUENTIAL), ("parallel", Workers(0))]
}

fn omega(c: &mut Criterion) {
    let mut g = c.benchmark_group("omega_table_sigma2");
    g.sample_size(10);
    for n in [14u32, 18] {
        for (name, w) in worker_settings() {
            g.bench_with_input(BenchmarkId::new(name, n), &n, |b, &n| {
                b.iter(|| omega_table(black_box(n), 2, DEFAULT_BUDGET, w).unwrap())
            });
        }
    }
    g.finish();
}

fn montecarlo(c: &mut Criterion) {
    let mut g = c.benchmark_group("montecarlo");
    g.sample_size(10);
    for (name, w) in worker_settings() {
        g.bench_function(BenchmarkId::new("growth_n256", name), |b| {
            b.iter(|| expected_growth_montecarlo(256, 2, 1000, 7, Regime::Uniform, w).unwrap())
        });
        g.bench_function(BenchmarkId::new("size_n128", name), |b| {
            b.iter(|| expected_size_montecarlo(128, 2, 100, 7, w).unwrap())
        });
    }
    g.finish();
}

fn naive_build(c: &mut Criterion) {
    let a = Alphabet::new(2).unwrap();
    let mut g = c.benchmark_group("naive_build");
    for n in [64usize, 256] {
        let s = random_string(n, a, &mut sample_rng(1, 0)).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(n), &s, |b, s| b.iter(|| NaiveSuffixTree::build(s).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, omega, montecarlo, naive_build);
criterion_main!(benches);
