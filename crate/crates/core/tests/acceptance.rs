//! Acceptance run: one line per criterion, non-zero exit if any fails.

use std::time::{Duration, Instant};

use qmodel::exec::Execution;
use qmodel::field::FieldSpec;
use qmodel::suites::{run_suite, SuiteConfig, SuiteReport};

const SEED: u64 = 20240917;

struct Outcome {
    passed: bool,
    detail: String,
}

fn cfg() -> SuiteConfig {
    SuiteConfig { seed: SEED, ..Default::default() }
}

fn suite(name: &str, c: &SuiteConfig) -> Result<SuiteReport, String> {
    run_suite(name, c).map_err(|e| format!("{name}: {e}"))
}

fn failures(r: &SuiteReport) -> String {
    r.cases
        .iter()
        .filter(|c| !c.passed)
        .map(|c| format!("{} ({} failures: {})", c.name, c.failures.len(), c.failures.first().map_or("", |f| &f.detail)))
        .collect::<Vec<_>>()
        .join("; ")
}

fn all_pass(reports: &[SuiteReport]) -> Outcome {
    let bad: Vec<String> = reports.iter().filter(|r| !r.passed).map(failures).collect();
    let cases: usize = reports.iter().map(|r| r.cases.len()).sum();
    let trials: usize = reports.iter().flat_map(|r| &r.cases).map(|c| c.trials).sum();
    Outcome {
        passed: bad.is_empty(),
        detail: if bad.is_empty() { format!("{cases} cases, {trials} trials") } else { bad.join(" | ") },
    }
}

fn timed(limit: Duration, f: impl FnOnce() -> Result<Vec<SuiteReport>, String>) -> Outcome {
    let start = Instant::now();
    let result = f();
    let elapsed = start.elapsed();
    match result {
        Err(e) => Outcome { passed: false, detail: e },
        Ok(reports) => {
            let mut o = all_pass(&reports);
            o.detail = format!("{} in {:.2?}", o.detail, elapsed);
            if elapsed > limit {
                o.passed = false;
                o.detail.push_str(&format!(" (limit {limit:?})"));
            }
            o
        }
    }
}

fn untimed(f: impl FnOnce() -> Result<Vec<SuiteReport>, String>) -> Outcome {
    timed(Duration::MAX, f)
}

fn cycle_homology() -> Outcome {
    let mut parts = Vec::new();
    let mut passed = true;
    for field in [FieldSpec::Prime(7), FieldSpec::Rationals] {
        for ground in ["k", "dual"] {
            for n in [1, 2, 3, 5] {
                let c = SuiteConfig {
                    field: Some(field),
                    ground: Some(ground.into()),
                    n: Some(n),
                    trials: Some(200),
                    ..cfg()
                };
                let o = timed(Duration::from_secs(60), || Ok(vec![suite("lemma-8.1", &c)?]));
                if !o.passed {
                    parts.push(format!("C{n} {field} {ground}: {}", o.detail));
                }
                passed &= o.passed;
            }
        }
    }
    Outcome { passed, detail: if passed { "16 configurations, 200 trials each, each under 60s".into() } else { parts.join(" | ") } }
}

fn e_criteria() -> Outcome {
    untimed(|| {
        ["k", "dual"]
            .iter()
            .map(|g| suite("prop-4.2", &SuiteConfig { ground: Some(g.to_string()), trials: Some(200), ..cfg() }))
            .collect()
    })
}

fn cotorsion() -> Outcome {
    untimed(|| {
        Ok(vec![
            suite("lemma-1.6", &SuiteConfig { ground: Some("dual".into()), trials: Some(100), ..cfg() })?,
            suite("comp1", &SuiteConfig { ground: Some("dual".into()), trials: Some(50), ..cfg() })?,
        ])
    })
}

fn determinism() -> Outcome {
    let runs: [(&str, SuiteConfig); 4] = [
        ("lemma-8.1", SuiteConfig { n: Some(3), trials: Some(50), ..cfg() }),
        ("prop-4.2", SuiteConfig { trials: Some(40), ..cfg() }),
        ("comp1", SuiteConfig { fixture: Some("C1".into()), trials: Some(10), ..cfg() }),
        ("tower", SuiteConfig { depth: Some(5), ..cfg() }),
    ];
    for (name, c) in runs {
        let first = match suite(name, &c) {
            Ok(r) => r.to_json(),
            Err(e) => return Outcome { passed: false, detail: e },
        };
        for exec in [Execution::Parallel, Execution::Sequential] {
            let again = match suite(name, &SuiteConfig { execution: exec, ..c.clone() }) {
                Ok(r) => r.to_json(),
                Err(e) => return Outcome { passed: false, detail: e },
            };
            if again != first {
                return Outcome { passed: false, detail: format!("{name}: report differs on rerun ({exec:?})") };
            }
        }
    }
    Outcome { passed: true, detail: "4 suites, byte-identical JSON across reruns and execution policies".into() }
}

fn main() {
    let criteria: Vec<(&str, fn() -> Outcome)> = vec![
        ("cycle homology of C_N", cycle_homology),
        ("window resolutions and R1K", || {
            untimed(|| Ok(vec![suite("lemma-9.2", &SuiteConfig { trials: Some(100), ..cfg() })?]))
        }),
        ("three descriptions of E agree", e_criteria),
        ("radical layers", || untimed(|| Ok(vec![suite("radical", &cfg())?]))),
        ("five-term sequences", || {
            untimed(|| Ok(vec![suite("five-term", &SuiteConfig { trials: Some(100), ..cfg() })?]))
        }),
        ("tower at depth 8", || {
            timed(Duration::from_secs(120), || Ok(vec![suite("tower", &SuiteConfig { depth: Some(8), ..cfg() })?]))
        }),
        ("lifted cotorsion pairs", cotorsion),
        ("self-injectivity and Nakayama permutation", || untimed(|| Ok(vec![suite("selfinj", &cfg())?]))),
        ("determinism", determinism),
    ];
    let mut all = true;
    for (i, (name, f)) in criteria.into_iter().enumerate() {
        let o = f();
        all &= o.passed;
        println!("[{}] {:>2} {:<45} {}", if o.passed { "PASS" } else { "FAIL" }, i + 1, name, o.detail);
    }
    println!("acceptance: {}", if all { "all criteria pass" } else { "FAILED" });
    if !all {
        std::process::exit(1);
    }
}
