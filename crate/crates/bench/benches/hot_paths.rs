//! Benchmarks for the four hot paths: equilibrium enumeration, the exact
//! solver, best-response dynamics with restarts, and the learning loop.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use hetsnet_bench::fixture;
use hetsnet_core::dynamics::{brd_multi, BrdConfig};
use hetsnet_core::equilibria::{find_all_pne, DEFAULT_ENUMERATION_CAP};
use hetsnet_core::games::{make_oracle, GameKind};
use hetsnet_core::instance::Seed;
use hetsnet_core::learning::{mwsls_run, LearningConfig};
use hetsnet_core::optimal::solve_optimal;

fn bench_pne_enumeration(c: &mut Criterion) {
    let instance = fixture(4, 6, 101);
    let oracle = make_oracle(GameKind::G, &instance);
    c.bench_function("find_all_pne 4x6 silence game", |b| {
        b.iter(|| find_all_pne(black_box(&oracle), DEFAULT_ENUMERATION_CAP).unwrap())
    });
}

fn bench_solver(c: &mut Criterion) {
    let instance = fixture(8, 10, 102);
    c.bench_function("solve_optimal 8x10", |b| {
        b.iter(|| solve_optimal(black_box(&instance)))
    });
}

fn bench_brd(c: &mut Criterion) {
    let instance = fixture(6, 8, 103);
    let oracle = make_oracle(GameKind::G, &instance);
    let config = BrdConfig {
        max_rounds: 48,
        restarts: 30,
        first_round: None,
        seed: Seed::new(7),
    };
    c.bench_function("brd_multi 6x8 q=30", |b| {
        b.iter(|| brd_multi(black_box(&oracle), black_box(&config)))
    });
}

fn bench_learning(c: &mut Criterion) {
    let instance = fixture(6, 8, 104);
    let config = LearningConfig {
        tau: 0.1,
        epsilon: 0.01,
        iterations: 100,
        seed: Seed::new(7),
    };
    c.bench_function("mwsls_run 6x8 t=100", |b| {
        b.iter(|| mwsls_run(black_box(&instance), black_box(&config)))
    });
}

criterion_group!(
    hot_paths,
    bench_pne_enumeration,
    bench_solver,
    bench_brd,
    bench_learning
);
criterion_main!(hot_paths);
