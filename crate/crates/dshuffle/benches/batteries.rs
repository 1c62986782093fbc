//! Data-parallel against sequential execution of the two heaviest batteries.

use criterion::{criterion_group, criterion_main, Criterion};
use dshuffle::betti_side::ga_word;
use dshuffle::braids::diagrams::{check_prop, group_words, Diagram, PropInput};
use dshuffle::mzv::{self, Composition};
use dshuffle::par;
use std::hint::black_box;

fn diagram_battery(c: &mut Criterion) {
    let inputs: Vec<_> = group_words(3).into_iter().map(ga_word).collect();
    let check = |a: &dshuffle::betti_side::GroupAlg| check_prop(Diagram::MB, &PropInput::Betti(a.clone())).unwrap().equal;
    let mut g = c.benchmark_group("betti module diagram, words <= 3");
    g.sample_size(10);
    g.bench_function("parallel", |b| b.iter(|| par::map(black_box(&inputs), check)));
    g.bench_function("sequential", |b| b.iter(|| par::map_seq(black_box(&inputs), check)));
    g.finish();
}

fn zeta_battery(c: &mut Criterion) {
    let comps: Vec<Composition> = mzv::admissible_words(6)
        .iter()
        .map(|w| Composition::from_word(w).unwrap())
        .collect();
    let eval = |x: &Composition| mzv::zeta(x, 256).unwrap();
    let mut g = c.benchmark_group("zeta table, weight <= 6, 256 bits");
    g.sample_size(10);
    g.bench_function("parallel", |b| b.iter(|| par::map(black_box(&comps), eval)));
    g.bench_function("sequential", |b| b.iter(|| par::map_seq(black_box(&comps), eval)));
    g.finish();
}

criterion_group!(benches, diagram_battery, zeta_battery);
criterion_main!(benches);
