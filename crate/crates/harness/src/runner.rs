use crate::case::Case;
use crate::config::{ConfigEcho, SuiteConfig};
use crate::error::HarnessError;
use crate::report::{CaseRecord, Record, Report, Status};
use crate::suites::{registry, Identity};
use rayon::prelude::*;
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::Instant;

/// The identities a configuration selects, in registry order.
pub fn selected(cfg: &SuiteConfig) -> Vec<&'static Identity> {
    registry()
        .iter()
        .filter(|i| cfg.suites.contains(&i.suite))
        .filter(|i| cfg.identities.is_empty() || cfg.identities.iter().any(|x| x == i.id))
        .filter(|i| cfg.numeric || !i.numeric)
        .collect()
}

fn run_case(cfg: &SuiteConfig, id: &Identity, index: u64, stop: &AtomicBool) -> CaseRecord {
    if stop.load(Ordering::Relaxed) {
        return CaseRecord { case: index, fixtures: Vec::new(), status: Status::Skipped, wall_ms: None };
    }
    let start = Instant::now();
    let mut case = Case::new(cfg, id.id, index);
    if let Err(e) = (id.body)(&mut case) {
        case.status = Status::Error { message: e.to_string() };
    }
    if cfg.fail_fast && case.status.is_failure() {
        stop.store(true, Ordering::Relaxed);
    }
    let wall_ms = cfg.timings.then(|| start.elapsed().as_secs_f64() * 1e3);
    CaseRecord { case: index, fixtures: case.fixtures, status: case.status, wall_ms }
}

pub fn run_suite(cfg: &SuiteConfig) -> Result<Report, HarnessError> {
    cfg.validate()?;
    let start = Instant::now();
    let ids = selected(cfg);
    let stop = AtomicBool::new(false);
    let jobs: Vec<(usize, u64)> = (0..ids.len()).flat_map(|i| (0..cfg.cases).map(move |c| (i, c))).collect();
    let results: Vec<CaseRecord> = jobs.par_iter().map(|&(i, c)| run_case(cfg, ids[i], c, &stop)).collect();
    let mut records: Vec<Record> = ids
        .iter()
        .map(|i| Record { id: i.id.to_string(), reference: i.reference.to_string(), suite: i.suite, cases: Vec::new(), wall_ms: None })
        .collect();
    for (&(i, _), r) in jobs.iter().zip(results) {
        records[i].cases.push(r);
    }
    if cfg.timings {
        for r in &mut records {
            r.wall_ms = Some(r.cases.iter().filter_map(|c| c.wall_ms).sum());
        }
    }
    let wall_ms = cfg.timings.then(|| start.elapsed().as_secs_f64() * 1e3);
    Ok(Report::new(ConfigEcho::from(cfg), records, wall_ms))
}
