use criterion::{black_box, criterion_group, criterion_main, Criterion};
use syzygy_core::field::PrimeField;
use syzygy_core::koszul::{betti_table, KoszulModule, Strategy};
use syzygy_core::lattices::{clifford_search, nikulin_quotient_picard, SearchConstraints};
use syzygy_core::linalg::{prime_rank_dense, prime_rank_sparse};
use syzygy_core::models::{plane_curve_model, Equations};

fn ranks(c: &mut Criterion) {
    let m = plane_curve_model(6, Equations::Seeded(1), PrimeField::default()).unwrap();
    let k = KoszulModule::full(&m).unwrap();
    let d = k.differential(3, 1).unwrap();
    let mut g = c.benchmark_group("rank sextic d(3,1)");
    g.sample_size(10);
    g.bench_function("sparse", |b| b.iter(|| prime_rank_sparse(black_box(&d))));
    g.bench_function("dense", |b| b.iter(|| prime_rank_dense(black_box(&d))));
    g.finish();
}

fn koszul(c: &mut Criterion) {
    let m = plane_curve_model(5, Equations::Seeded(1), PrimeField::default()).unwrap();
    let k = KoszulModule::full(&m).unwrap();
    c.bench_function("assemble quintic d(2,2)", |b| {
        b.iter(|| k.differential(black_box(2), 2).unwrap())
    });
    c.bench_function("betti quintic", |b| {
        b.iter(|| betti_table(black_box(&m), Strategy::Direct).unwrap())
    });
}

fn lattices(c: &mut Criterion) {
    let o = nikulin_quotient_picard(15).unwrap();
    let cons = SearchConstraints::new(0, 28);
    c.bench_function("clifford search nikulin g=15", |b| {
        b.iter(|| clifford_search(black_box(&o.lattice), &o.c_tilde, &cons).unwrap())
    });
}

criterion_group!(benches, ranks, koszul, lattices);
criterion_main!(benches);
