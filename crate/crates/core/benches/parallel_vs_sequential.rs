use std::f64::consts::PI;
use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use wavesamp::error_bounds::b2;
use wavesamp::kernels::{self, bspline_fourier_centered};
use wavesamp::mra::project;
use wavesamp::operators::error_curve;
use wavesamp::{signal, Complex64, Execution, GridSpec, IntegrationSpec, OperatorConfig};

const POLICIES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn bench_error_curve(c: &mut Criterion) {
    let h = signal::sin2pi();
    let grid = GridSpec::new(0.0, 1.0, 513).unwrap();
    let mut group = c.benchmark_group("error_curve");
    for (name, exec) in POLICIES {
        let cfg = OperatorConfig::new(6, kernels::bspline(2).unwrap(), kernels::haar()).with_execution(exec);
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| error_curve(black_box(&cfg), &h, &grid).unwrap())
        });
    }
    group.finish();
}

fn bench_b2(c: &mut Criterion) {
    let sinc4 = |w: f64| Complex64::from(bspline_fourier_centered(3, w));
    let spec = IntegrationSpec::default();
    let mut group = c.benchmark_group("b2");
    for (name, exec) in POLICIES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| b2(sinc4, sinc4, 2, -64..=64, (-PI, PI), &spec, black_box(exec)).unwrap())
        });
    }
    group.finish();
}

fn bench_project(c: &mut Criterion) {
    let h = signal::sin2pi();
    let spec = IntegrationSpec::default();
    let chi = kernels::bspline(3).unwrap();
    let mut group = c.benchmark_group("project");
    for (name, exec) in POLICIES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| project(&h, 9, &chi, &spec, black_box(exec)).unwrap())
        });
    }
    group.finish();
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(20);
    targets = bench_error_curve, bench_b2, bench_project
}
criterion_main!(benches);
