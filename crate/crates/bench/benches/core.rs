use criterion::{criterion_group, criterion_main, Criterion};
use octoplane_core::curvature::{riemann_closed_form_tensor, riemann_origin_numeric};
use octoplane_core::isometry::{apply_composition, isometry_to};
use octoplane_core::metric::metric_matrix;
use octoplane_core::osserman::jacobi_operator;
use octoplane_core::{AlgebraKind, HyperNumber, PlaneKind, Sampler};
use std::hint::black_box;

fn algebra(c: &mut Criterion) {
    let mut s = Sampler::new(1);
    let (a, b) = (s.hyper(AlgebraKind::Octonion), s.hyper(AlgebraKind::Octonion));
    c.bench_function("octonion product", |bench| bench.iter(|| black_box(a) * black_box(b)));
    let (a, b) = (s.hyper(AlgebraKind::ParaOctonion), s.hyper(AlgebraKind::ParaOctonion));
    c.bench_function("para-octonion inverse", |bench| bench.iter(|| black_box(a * b).inverse()));
}

fn metric(c: &mut Criterion) {
    let p = Sampler::new(2).point(PlaneKind::Op11);
    c.bench_function("metric matrix op11", |bench| bench.iter(|| metric_matrix(black_box(&p))));
}

fn isometry(c: &mut Criterion) {
    let target = Sampler::new(3).point(PlaneKind::ParaOp2);
    c.bench_function("para homogeneity", |bench| {
        bench.iter(|| {
            let comp = isometry_to(black_box(&target)).unwrap();
            apply_composition(PlaneKind::ParaOp2, &comp, &PlaneKind::ParaOp2.origin()).unwrap()
        })
    });
}

fn curvature(c: &mut Criterion) {
    let mut g = c.benchmark_group("curvature");
    g.sample_size(10);
    g.bench_function("numeric origin tensor op2", |bench| bench.iter(|| riemann_origin_numeric(PlaneKind::Op2)));
    g.bench_function("closed-form tensor op2", |bench| bench.iter(|| riemann_closed_form_tensor(PlaneKind::Op2)));
    g.finish();
}

fn jacobi(c: &mut Criterion) {
    let v = octoplane_core::curvature::from_pair(&(
        HyperNumber::basis(AlgebraKind::Octonion, 0),
        HyperNumber::basis(AlgebraKind::Octonion, 3),
    ));
    c.bench_function("jacobi operator + spectrum", |bench| {
        bench.iter(|| jacobi_operator(PlaneKind::Op2, black_box(&v)).eigenvalues().unwrap())
    });
}

criterion_group!(benches, algebra, metric, isometry, curvature, jacobi);
criterion_main!(benches);
