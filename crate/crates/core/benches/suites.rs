use std::hint::black_box;
use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use qmodel::exec::Execution;
use qmodel::field::FieldSpec;
use qmodel::suites::{run_suite, SuiteConfig};

const POLICIES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn bench_suite(c: &mut Criterion, suite: &str, base: SuiteConfig) {
    let mut group = c.benchmark_group(suite);
    group.sample_size(10).measurement_time(Duration::from_secs(5));
    for (label, exec) in POLICIES {
        let cfg = SuiteConfig { execution: exec, ..base.clone() };
        group.bench_with_input(BenchmarkId::from_parameter(label), &cfg, |b, cfg| {
            b.iter(|| black_box(run_suite(suite, cfg).expect("suite runs").passed))
        });
    }
    group.finish();
}

fn cycle_homology(c: &mut Criterion) {
    bench_suite(
        c,
        "lemma-8.1",
        SuiteConfig { n: Some(5), field: Some(FieldSpec::Rationals), trials: Some(200), seed: 1, ..Default::default() },
    );
}

fn e_criteria(c: &mut Criterion) {
    bench_suite(c, "prop-4.2", SuiteConfig { trials: Some(200), seed: 1, ..Default::default() });
}

fn ext_grid(c: &mut Criterion) {
    bench_suite(c, "comp1", SuiteConfig { fixture: Some("C3".into()), trials: Some(50), seed: 1, ..Default::default() });
}

fn towers(c: &mut Criterion) {
    bench_suite(c, "tower", SuiteConfig { depth: Some(8), seed: 1, ..Default::default() });
}

criterion_group!(benches, cycle_homology, e_criteria, ext_grid, towers);
criterion_main!(benches);
