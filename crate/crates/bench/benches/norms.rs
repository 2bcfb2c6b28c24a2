use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use finsler_ineq::calculus::{fd_fundamental_tensor, FdConfig};
use finsler_ineq::{
    evaluate, fundamental_tensor_analytic, sample_domain, sample_pairs, sym_eigen, NormSpec,
    SampleConfig, SymTensor,
};

fn specs(d: usize) -> Vec<NormSpec> {
    vec![
        NormSpec::minkowski(d).unwrap(),
        NormSpec::p_pseudo_norm(d, 3.0).unwrap(),
        NormSpec::berwald_moor(d).unwrap(),
        NormSpec::bimetric(SymTensor::from_fn(d, |i, j| match (i, j) {
            (0, 0) => 2.0,
            _ if i == j => -1.5,
            _ => 0.0,
        })
        .unwrap())
        .unwrap(),
        NormSpec::kropina(d).unwrap(),
        NormSpec::stationary(NormSpec::euclidean_p(d - 1, 3.0).unwrap()).unwrap(),
    ]
}

fn norms(c: &mut Criterion) {
    for d in [3, 8] {
        let mut group = c.benchmark_group(format!("dim{d}"));
        for spec in specs(d) {
            let v = sample_domain(&spec, &SampleConfig::new(1, 1)).unwrap().remove(0);
            let name = spec.family().name();
            group.bench_with_input(BenchmarkId::new("evaluate", name), &v, |b, v| {
                b.iter(|| evaluate(&spec, black_box(v)).unwrap())
            });
            group.bench_with_input(BenchmarkId::new("tensor", name), &v, |b, v| {
                b.iter(|| fundamental_tensor_analytic(&spec, black_box(v)).unwrap())
            });
            group.bench_with_input(BenchmarkId::new("fd_tensor", name), &v, |b, v| {
                b.iter(|| fd_fundamental_tensor(&spec, black_box(v), FdConfig::hessian()).unwrap())
            });
            let g = fundamental_tensor_analytic(&spec, &v).unwrap();
            group.bench_with_input(BenchmarkId::new("sym_eigen", name), &g, |b, g| {
                b.iter(|| sym_eigen(black_box(g)).unwrap())
            });
        }
        group.finish();
    }
}

fn sampling(c: &mut Criterion) {
    let spec = NormSpec::berwald_moor(5).unwrap();
    let cfg = SampleConfig::new(7, 1000);
    c.bench_function("sample_pairs/berwald_moor5/1000", |b| {
        b.iter(|| sample_pairs(&spec, black_box(&cfg)).unwrap())
    });
}

criterion_group!(benches, norms, sampling);
criterion_main!(benches);
