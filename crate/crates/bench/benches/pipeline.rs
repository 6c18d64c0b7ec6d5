use criterion::{criterion_group, criterion_main, Criterion};

use wphodge::exactla::{pencil_min_rank, rank};
use wphodge::groebner::buchberger;
use wphodge::hodge::period_differential;
use wphodge::jacring::{jacobian_ideal, random_quasi_smooth};
use wphodge::{MonomialOrder, PencilOptions};
use wphodge_bench::{decic, fermat_decic, fermat_decic_ring};

fn groebner(c: &mut Criterion) {
    let order = MonomialOrder::weighted_degrevlex(decic());
    let fermat = jacobian_ideal(&fermat_decic());
    c.bench_function("groebner/fermat_decic", |b| {
        b.iter(|| buchberger(&fermat, order))
    });

    let random = jacobian_ideal(&random_quasi_smooth(&decic(), 1).expect("seed 1 is quasi-smooth"));
    let mut g = c.benchmark_group("groebner");
    g.sample_size(10);
    g.bench_function("random_decic", |b| b.iter(|| buchberger(&random, order)));
    g.finish();
}

fn linear_algebra(c: &mut Criterion) {
    let report =
        period_differential(&fermat_decic_ring(), PencilOptions::exact()).expect("decic analyzes");
    let (a, b) = (
        report.a.clone().expect("p = 2"),
        report.b.clone().expect("p = 2"),
    );
    c.bench_function("rank/matrix_m_56x28", |bch| {
        bch.iter(|| rank(&report.matrix_m))
    });
    let mut g = c.benchmark_group("pencil");
    g.sample_size(10);
    g.bench_function("exact_28x28", |bch| {
        bch.iter(|| pencil_min_rank(&a, &b, PencilOptions::exact()))
    });
    g.bench_function("sampled_28x28", |bch| {
        bch.iter(|| pencil_min_rank(&a, &b, PencilOptions::sampled(0)))
    });
    g.finish();
}

criterion_group!(benches, groebner, linear_algebra);
criterion_main!(benches);
