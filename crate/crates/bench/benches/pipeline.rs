// SPDX-License-Identifier: Apache-2.0

use criterion::{criterion_group, criterion_main, Criterion};
use phaselab_bench::{spek, stab, stab_ghz_table};
use phaselab_core::frobenius::{phase_group, spider_property_test};
use phaselab_core::lhv::{lhv_feasibility, possibilistic_lhv, LhvOptions};
use phaselab_core::report::ghz_tables;
use phaselab_core::theories::{enumerate_states, DEFAULT_DEPTH_BOUND};

fn states(c: &mut Criterion) {
    let mut g = c.benchmark_group("states");
    g.sample_size(10);
    g.bench_function("stab_arity2", |b| b.iter(|| enumerate_states(&stab().binding, 2, DEFAULT_DEPTH_BOUND).unwrap()));
    g.bench_function("spek_arity2", |b| b.iter(|| enumerate_states(&spek().binding, 2, DEFAULT_DEPTH_BOUND).unwrap()));
    g.finish();
}

fn algebra(c: &mut Criterion) {
    let (t, u) = (stab(), spek());
    c.bench_function("phase_group/stab", |b| b.iter(|| phase_group(&t.observables[0], &t.states.states).unwrap()));
    c.bench_function("phase_group/spek", |b| b.iter(|| phase_group(&u.observables[0], &u.states.states).unwrap()));
    c.bench_function("correlations/stab", |b| b.iter(|| ghz_tables(t).unwrap()));
    c.bench_function("spider/stab_z", |b| b.iter(|| spider_property_test(&t.observables[0], 4, 1, 2).unwrap()));
}

fn lhv(c: &mut Criterion) {
    let table = stab_ghz_table();
    let poss = table.to_possibilistic();
    let mut g = c.benchmark_group("lhv");
    g.sample_size(10);
    g.bench_function("stab_lp", |b| b.iter(|| lhv_feasibility(&table, LhvOptions::default()).unwrap()));
    g.bench_function("stab_lp_symmetric", |b| b.iter(|| lhv_feasibility(&table, LhvOptions { symmetry: true }).unwrap()));
    g.bench_function("stab_possibilistic", |b| b.iter(|| possibilistic_lhv(&poss).unwrap()));
    g.finish();
}

criterion_group!(benches, states, algebra, lhv);
criterion_main!(benches);
