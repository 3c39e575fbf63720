//! Parallel vs sequential execution of the experiment drivers.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dkcert_core::generators::sharpness::{sharpness_search_with, Objective, SearchConfig};
use dkcert_core::generators::sweep::sweep_with;
use dkcert_core::generators::{EnsembleConfig, Field, PerturbationClass, SpectrumLaw};
use dkcert_core::par::Execution;
use dkcert_core::{Disposition, Tolerances};

const MODES: [(&str, Execution); 2] = [("parallel", Execution::Parallel), ("sequential", Execution::Sequential)];

fn ensemble(n: usize) -> EnsembleConfig {
    EnsembleConfig {
        n,
        disposition: Disposition::Subordinated,
        k: n / 4,
        spectrum: SpectrumLaw::Uniform { min_separation: 0.05 },
        x_grid: vec![0.1, 0.5, 1.0, 2.0],
        trials: 64,
        class: PerturbationClass::Offdiagonal,
        seed: 7,
        field: Field::Real,
    }
}

fn bench_sweep(c: &mut Criterion) {
    let tol = Tolerances::default();
    let mut group = c.benchmark_group("sweep");
    group.sample_size(10);
    for n in [4, 8, 12] {
        let config = ensemble(n);
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, n), &config, |b, config| {
                b.iter(|| black_box(sweep_with(config, &tol, exec).unwrap()))
            });
        }
    }
    group.finish();
}

fn bench_search(c: &mut Criterion) {
    let tol = Tolerances::default();
    let config = SearchConfig {
        objective: Objective::MinimizeGapDistance,
        disposition: Disposition::Generic,
        class: PerturbationClass::Offdiagonal,
        x_fixed: 0.86,
        n: 4,
        k: 2,
        budget: 1600,
        seed: 1,
        restarts: Some(8),
        field: Field::Real,
    };
    let mut group = c.benchmark_group("sharpness");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(name, |b| b.iter(|| black_box(sharpness_search_with(&config, &tol, exec).unwrap())));
    }
    group.finish();
}

criterion_group!(benches, bench_sweep, bench_search);
criterion_main!(benches);
