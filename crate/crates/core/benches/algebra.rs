//! Sequential versus rayon execution of the heavy linear-algebra sweeps.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use heckext::exec::Exec;
use heckext::ext_iwahori::{centralizer, finite_generation_check};
use heckext::ext_spherical::graded_comm_report;
use heckext::Fp;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn bench_centralizer(c: &mut Criterion) {
    let f = Fp::new(5);
    let mut group = c.benchmark_group("centralizer_deg2");
    for max_len in [6u64, 10] {
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, max_len), &max_len, |b, &m| {
                b.iter(|| centralizer(f, 2, m, exec))
            });
        }
    }
    group.finish();
}

fn bench_generation(c: &mut Criterion) {
    let f = Fp::new(5);
    let mut group = c.benchmark_group("finite_generation");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(name, |b| b.iter(|| finite_generation_check(f, 8, exec)));
    }
    group.finish();
}

fn bench_spherical(c: &mut Criterion) {
    let f = Fp::new(5);
    let mut group = c.benchmark_group("graded_comm_report");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(name, |b| b.iter(|| graded_comm_report(f, 4, exec)));
    }
    group.finish();
}

criterion_group!(benches, bench_centralizer, bench_generation, bench_spherical);
criterion_main!(benches);
