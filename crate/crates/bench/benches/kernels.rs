use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use parsmash::hochss::hochschild;
use parsmash::parcoh::{hpar, HparOptions};
use parsmash::partial::fixtures::split_pair_partial;
use parsmash::random::{rng, small_matrix};
use parsmash::{
    Bimodule, Budget, Field, FiniteGroup, GroupKind, Kpar, PrimeField, Rationals, SmashAlgebra,
};

fn rank<F: Field>(c: &mut Criterion, f: &F, label: &str) {
    let mut group = c.benchmark_group(format!("rank/{label}"));
    for n in [16, 48] {
        let m = small_matrix(f, n, n, &mut rng(n as u64));
        group.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| {
            b.iter(|| black_box(m.rank()))
        });
    }
    group.finish();
}

fn ranks(c: &mut Criterion) {
    rank(c, &Rationals, "Q");
    rank(c, &PrimeField::new(101).unwrap(), "F101");
}

fn build_kpar(c: &mut Criterion) {
    let mut group = c.benchmark_group("build_kpar");
    for kind in [GroupKind::Cyclic(4), GroupKind::Symmetric(3)] {
        let g = Arc::new(FiniteGroup::standard(kind, 24).unwrap());
        group.bench_function(g.name().to_string(), |b| {
            b.iter(|| black_box(Kpar::new(&Rationals, g.clone(), 1024).unwrap().dim()))
        });
    }
    group.finish();
}

fn partial_cohomology(c: &mut Criterion) {
    let f2 = PrimeField::new(2).unwrap();
    let g = Arc::new(FiniteGroup::standard(GroupKind::Cyclic(3), 24).unwrap());
    let kp = Kpar::new(&f2, g, 1024).unwrap();
    let m = kp.b_module();
    let opts = HparOptions {
        max_degree: 3,
        cross_checks: false,
        reversed_check: false,
        groupoid_oracle: false,
        ..HparOptions::default()
    };
    c.bench_function("hpar/C3/F2/B", |b| {
        b.iter(|| black_box(hpar(&kp, &m, &opts).unwrap().dims()))
    });
}

fn hochschild_smash(c: &mut Criterion) {
    let sm = SmashAlgebra::new(Arc::new(split_pair_partial(&Rationals))).unwrap();
    let m = Bimodule::regular(sm.algebra().clone());
    let budget = Budget::default();
    c.bench_function("hochschild/split_pair", |b| {
        b.iter(|| black_box(hochschild(&m, 2, true, &budget).unwrap().dims()))
    });
}

criterion_group!(
    benches,
    ranks,
    build_kpar,
    partial_cohomology,
    hochschild_smash
);
criterion_main!(benches);
