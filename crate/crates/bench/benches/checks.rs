use criterion::{criterion_group, criterion_main, Criterion};
use nexang_bench::{ctx_on_one_object, dense_matrix, doubling_of};
use nexang_core::angulated::check_angulation_axioms;
use nexang_core::exangulated::{check_exangulated_axioms, split_structure};
use nexang_core::search::Ctx;
use nexang_core::transport::transport_angulation;
use nexang_core::{fixtures, linalg, Config};

fn linear_algebra(c: &mut Criterion) {
    for (p, n) in [(2, 32), (3, 32), (7, 64)] {
        let (f, m) = dense_matrix(p, n);
        c.bench_function(&format!("rank {n}x{n} over F_{p}"), |b| b.iter(|| linalg::rank(f, &m)));
        c.bench_function(&format!("kernel {n}x{n} over F_{p}"), |b| b.iter(|| linalg::kernel_basis(f, &m)));
    }
}

fn axioms(c: &mut Criterion) {
    let mut g = c.benchmark_group("axioms");
    g.sample_size(10);
    let (cat, t) = fixtures::triangulated();
    let ctx = Ctx::new(cat, Config::new(2));
    g.bench_function("triangulated F1-F4, B = 2", |b| b.iter(|| check_angulation_axioms(&ctx, &t)));
    for n in 1..=3 {
        let ctx = ctx_on_one_object(2);
        let (e, r) = split_structure(&ctx, n);
        g.bench_function(format!("split {n}-exangulated, B = 2"), |b| b.iter(|| check_exangulated_axioms(&ctx, &e, &r)));
    }
    g.finish();
}

fn transport(c: &mut Criterion) {
    let mut g = c.benchmark_group("transport");
    g.sample_size(10);
    let (_, t) = fixtures::triangulated();
    let w = doubling_of("S");
    let cfg = Config::new(2);
    g.bench_function("angulation along the doubling", |b| b.iter(|| transport_angulation(&t, &w, &cfg).unwrap()));
    g.finish();
}

criterion_group!(benches, linear_algebra, axioms, transport);
criterion_main!(benches);
