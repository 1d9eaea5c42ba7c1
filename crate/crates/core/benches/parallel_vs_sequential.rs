use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use k3lat_core::finite_form::discriminant_form;
use k3lat_core::lattice::standard;
use k3lat_core::orbit::{normal_form_domain, orbit_sweep};
use k3lat_core::parallel::Execution;
use k3lat_core::suite::run_criteria;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn orbit(c: &mut Criterion) {
    let forms = normal_form_domain(5, 2);
    let mut g = c.benchmark_group("orbit_sweep");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| orbit_sweep(5, &forms, 20, 1, exec)));
    }
    g.finish();
}

fn census(c: &mut Criterion) {
    // (Z/2)^16: large enough to split into chunks
    let (form, _) = discriminant_form(&standard::diagonal(&[-2; 16], "k")).unwrap();
    let mut g = c.benchmark_group("q_census");
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| form.q_census_with(exec).unwrap()));
    }
    g.finish();
}

fn suite(c: &mut Criterion) {
    let mut g = c.benchmark_group("run_criteria");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| run_criteria(Some("divisor"), exec)));
    }
    g.finish();
}

criterion_group!(benches, orbit, census, suite);
criterion_main!(benches);
