//! One line per acceptance criterion. Exits nonzero if any fails.

use rumin::mutation::Mutation;
use rumin_harness::report::Report;
use rumin_harness::{run_suite, Status, SuiteConfig};
use std::time::{Duration, Instant};

type Criterion = Box<dyn Fn() -> (bool, String)>;

fn run(ids: &[&str]) -> (Report, Duration) {
    let start = Instant::now();
    let r = run_suite(&SuiteConfig::default().only(ids)).expect("valid config");
    (r, start.elapsed())
}

fn describe(r: &Report) -> String {
    let s = &r.summary;
    format!("{} identities, {} cases, {} exact-zero", s.identities, s.cases, s.exact_zero)
}

fn exact(ids: &[&str]) -> (bool, String) {
    let (r, t) = run(ids);
    (r.all_exact() && r.summary.cases == ids.len() * 5, format!("{} in {:.1}s", describe(&r), t.as_secs_f64()))
}

fn criterion_1() -> (bool, String) {
    let (r, t) = run(&["complex.two-step-compositions"]);
    let ok = r.all_exact() && t < Duration::from_secs(120);
    (ok, format!("{} in {:.1}s (target < 120s)", describe(&r), t.as_secs_f64()))
}

/// A failing frame-versus-scalar comparison must carry both sides.
fn criterion_7() -> (bool, String) {
    let (ok, msg) = exact(&["scalar.fefferman-hirachi"]);
    let cfg = SuiteConfig { cases: 2, mutation: Some(Mutation::LeeSign), ..SuiteConfig::default() }.only(&["scalar.fefferman-hirachi"]);
    let r = run_suite(&cfg).expect("valid config");
    let both = r.records[0].cases.iter().any(|c| matches!(&c.status, Status::Nonzero { lhs: Some(_), rhs: Some(_), .. }));
    (ok && both, format!("{msg}; discrepancy under a mutation reports both sides: {both}"))
}

fn criterion_8() -> (bool, String) {
    let start = Instant::now();
    let cfg = SuiteConfig { cutoff: 8, ..SuiteConfig::default() }.with_suites(&[rumin_harness::Suite::IntegralIdentities]);
    let r = run_suite(&cfg).expect("valid config");
    let t = start.elapsed();
    (r.all_exact() && t < Duration::from_secs(300), format!("{} in {:.1}s (target < 300s)", describe(&r), t.as_secs_f64()))
}

fn criterion_10() -> (bool, String) {
    let cfg = SuiteConfig { seed: 7, ..SuiteConfig::default() };
    let same = run_suite(&cfg).unwrap().to_json() == run_suite(&cfg).unwrap().to_json();
    let mut missed = Vec::new();
    for m in Mutation::ALL {
        let cfg = SuiteConfig { cases: 1, fail_fast: true, mutation: Some(m), ..SuiteConfig::default() };
        if run_suite(&cfg).unwrap().all_exact() {
            missed.push(m.name());
        }
    }
    let caught = Mutation::ALL.len() - missed.len();
    let ok = same && caught >= 10;
    (ok, format!("byte-identical reports: {same}; mutations caught {caught}/{} {missed:?}", Mutation::ALL.len()))
}

fn main() {
    let criteria: Vec<(u32, &str, Criterion)> = vec![
        (1, "bigraded complex", Box::new(criterion_1)),
        (2, "structure equations", Box::new(|| exact(&["structure.invariants", "structure.transformation"]))),
        (3, "Lee form law", Box::new(|| exact(&["conformal.lee-form"]))),
        (4, "Q01 laws", Box::new(|| exact(&["q.q01-law-dbar-closed", "q.q01-law-general"]))),
        (
            5,
            "fourth-order and Q11 laws",
            Box::new(|| exact(&["conformal.fourth-order-closed", "conformal.fourth-order-general", "conformal.q11-closed", "conformal.r11-closed"])),
        ),
        (6, "scalar consistency", Box::new(|| exact(&["scalar.gjms-two-paths", "scalar.q-law", "scalar.flat-q"]))),
        (7, "frame Q-curvature", Box::new(criterion_7)),
        (8, "integral identities", Box::new(criterion_8)),
        (
            9,
            "two-path oracles",
            Box::new(|| {
                exact(&[
                    "q.fourth-order-three-paths",
                    "complex.rwedge-11-11",
                    "complex.rwedge-11-01",
                    "complex.adjoint-frames",
                    "complex.hodge-formula",
                    "complex.hodge-defining-relation",
                ])
            }),
        ),
        (10, "determinism and sensitivity", Box::new(criterion_10)),
    ];
    let mut failed = 0;
    for (n, name, check) in criteria {
        let (ok, detail) = check();
        println!("criterion {n}: {} {name}: {detail}", if ok { "pass" } else { "FAIL" });
        failed += usize::from(!ok);
    }
    if failed > 0 {
        eprintln!("{failed} criteria failed");
        std::process::exit(1);
    }
}
