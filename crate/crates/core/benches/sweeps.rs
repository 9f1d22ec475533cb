//! Sequential versus data-parallel execution of the batch operations.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use sta_perceptron::evolve::{default_transfer_grid, transfer_function};
use sta_perceptron::ie::{synthesize, SynthesisConfig};
use sta_perceptron::optimize::{scan_coefficients, step_grid, sweep_tf, CoefficientGrid, Method, SweepOptions};
use sta_perceptron::Exec;

const POLICIES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn transfer(c: &mut Criterion) {
    let pulse = synthesize(&SynthesisConfig::cubic(1.0)).unwrap().pulse;
    let grid = default_transfer_grid(12.0);
    let mut g = c.benchmark_group("transfer_241");
    g.sample_size(10);
    for (name, exec) in POLICIES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| transfer_function(black_box(&pulse), &grid, exec).unwrap())
        });
    }
    g.finish();
}

fn quartic_scan(c: &mut Criterion) {
    let cfg = SynthesisConfig { n_time: 5000, ..SynthesisConfig::quartic(0.15, 0.0) };
    let grid = CoefficientGrid { a2: step_grid(-600.0, 100.0, 10.0).unwrap(), a3: Vec::new() };
    let mut g = c.benchmark_group("scan_quartic_71");
    g.sample_size(10);
    for (name, exec) in POLICIES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| scan_coefficients(black_box(&cfg), &grid, exec).unwrap())
        });
    }
    g.finish();
}

fn tf_sweep(c: &mut Criterion) {
    let cfg = SynthesisConfig { n_time: 5000, ..SynthesisConfig::default() };
    let grid = step_grid(0.1, 1.0, 0.05).unwrap();
    let mut g = c.benchmark_group("sweep_tf_19");
    g.sample_size(10);
    for (name, exec) in POLICIES {
        for method in [Method::IeCubic, Method::Faquad] {
            let opts = SweepOptions { exec, ..SweepOptions::default() };
            g.bench_function(BenchmarkId::new(method.as_str(), name), |b| {
                b.iter(|| sweep_tf(black_box(&cfg), &grid, method, &opts).unwrap())
            });
        }
    }
    g.finish();
}

criterion_group!(benches, transfer, quartic_scan, tf_sweep);
criterion_main!(benches);
