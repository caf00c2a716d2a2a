//! Claim registry, claim runner and report emission for `minorlab`.

pub mod claims;
pub mod input;
pub mod ops;

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use minorlab_core::{Budget, Error, SearchStats};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error as ThisError;

use claims::{ClaimSpec, Expectation};

/// Environment variable holding the default node budget.
pub const BUDGET_ENV: &str = "MINORLAB_BUDGET";

#[derive(Debug, ThisError)]
pub enum LabError {
    #[error("config error: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Refused,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub claim_id: String,
    pub status: Status,
    pub computed: Value,
    pub expected: Value,
    pub search_stats: SearchStats,
    pub runtime_ms: u64,
}

/// Exit code of a batch: 0 all pass, 1 any fail, 2 refusals but no fail.
pub fn exit_code(reports: &[Report]) -> i32 {
    if reports.iter().any(|r| r.status == Status::Fail) {
        1
    } else if reports.iter().any(|r| r.status == Status::Refused) {
        2
    } else {
        0
    }
}

fn as_number(v: &Value) -> Option<u64> {
    v.as_u64().or_else(|| v.get("value").and_then(Value::as_u64))
}

fn judge(expect: &Expectation, computed: &Value) -> bool {
    let exact = expect
        .exact
        .as_ref()
        .is_none_or(|want| want == computed || ["found", "value"].iter().any(|k| computed.get(k) == Some(want)));
    let n = as_number(computed);
    let at_most = expect.at_most.is_none_or(|m| n.is_some_and(|x| x <= m));
    let at_least = expect.at_least.is_none_or(|m| n.is_some_and(|x| x >= m));
    exact && at_most && at_least
}

/// Run one claim under `min(claim budget, global)` search nodes. Refusals
/// are reported as such, never as a pass.
pub fn run_claim(c: &ClaimSpec, global: u64) -> Result<Report, LabError> {
    let limit = c.budget.map_or(global, |b| b.min(global));
    let budget = Budget::new(limit);
    let start = Instant::now();
    let expected = serde_json::to_value(&c.expect).unwrap_or(Value::Null);
    let (status, computed) = match ops::execute(&c.op, &budget) {
        Ok(out) => {
            if out.verdict.is_none() && c.expect.is_empty() {
                return Err(LabError::Config(format!("claim {}: no expectation", c.id)));
            }
            let ok = out.verdict.unwrap_or(true) && judge(&c.expect, &out.computed);
            (if ok { Status::Pass } else { Status::Fail }, out.computed)
        }
        Err(LabError::Core(Error::Refused(r))) => (Status::Refused, json!({"refusal": r.reason})),
        Err(LabError::Config(e)) => return Err(LabError::Config(format!("claim {}: {e}", c.id))),
        Err(LabError::Core(e)) => (Status::Fail, json!({"error": e.to_string()})),
    };
    Ok(Report {
        claim_id: c.id.clone(),
        status,
        computed,
        expected,
        search_stats: budget.stats(),
        runtime_ms: start.elapsed().as_millis() as u64,
    })
}

/// Run claims on up to `workers` threads; reports come back in registry
/// order. The first config error aborts the batch.
pub fn run_claims(claims: &[ClaimSpec], global: u64, workers: usize) -> Result<Vec<Report>, LabError> {
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<Result<Report, LabError>>>> = Mutex::new((0..claims.len()).map(|_| None).collect());
    std::thread::scope(|s| {
        for _ in 0..workers.clamp(1, claims.len().max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(c) = claims.get(i) else { break };
                let r = run_claim(c, global);
                slots.lock().unwrap()[i] = Some(r);
            });
        }
    });
    slots.into_inner().unwrap().into_iter().map(|r| r.expect("every claim ran")).collect()
}

pub fn verify_suite(suite: &str, global: u64, workers: usize) -> Result<Vec<Report>, LabError> {
    run_claims(&claims::suite(suite)?, global, workers)
}

pub fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get()).min(8)
}

/// Budget from the environment, else the core default.
pub fn default_budget() -> Result<u64, LabError> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| LabError::Config(format!("{BUDGET_ENV}={v:?} is not a node count"))),
        Err(_) => Ok(minorlab_core::budget::DEFAULT_NODES),
    }
}

pub fn reports_csv(reports: &[Report]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["claim_id", "status", "nodes", "refusals", "runtime_ms", "computed", "expected"]).unwrap();
    for r in reports {
        let status = serde_json::to_value(r.status).unwrap();
        w.write_record([
            r.claim_id.clone(),
            status.as_str().unwrap_or_default().to_string(),
            r.search_stats.nodes.to_string(),
            r.search_stats.refusals.to_string(),
            r.runtime_ms.to_string(),
            r.computed.to_string(),
            r.expected.to_string(),
        ])
        .unwrap();
    }
    String::from_utf8(w.into_inner().unwrap()).unwrap()
}
