//! Runs the proved identities and the conjecture scans and collects one
//! report per check.

mod conjectures;
mod theorems;

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

pub use conjectures::{conjecture_tasks, ConjectureLimits};
pub use theorems::{theorem_tasks, Fault, SuiteConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CheckStatus {
    #[serde(rename = "proved-identity-pass")]
    ProvedPass,
    #[serde(rename = "proved-identity-FAIL")]
    ProvedFail,
    #[serde(rename = "conjecture-consistent")]
    ConjectureConsistent,
    #[serde(rename = "conjecture-COUNTEREXAMPLE")]
    ConjectureCounterexample,
}

impl CheckStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckStatus::ProvedPass => "proved-identity-pass",
            CheckStatus::ProvedFail => "proved-identity-FAIL",
            CheckStatus::ConjectureConsistent => "conjecture-consistent",
            CheckStatus::ConjectureCounterexample => "conjecture-COUNTEREXAMPLE",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    Theorem,
    Conjecture,
}

/// Sizes a check ran at.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Scope {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sizes: Option<(usize, usize)>,
}

impl Scope {
    pub fn degree(n: usize) -> Self {
        Scope { degree: Some(n), ..Default::default() }
    }

    pub fn sizes(lo: usize, hi: usize) -> Self {
        Scope { sizes: Some((lo, hi)), ..Default::default() }
    }
}

/// What a single check found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub holds: bool,
    pub witness: Option<String>,
    pub detail: Option<String>,
}

impl Outcome {
    pub fn pass() -> Self {
        Outcome { holds: true, witness: None, detail: None }
    }

    pub fn fail(witness: impl Into<String>, detail: impl Into<String>) -> Self {
        Outcome { holds: false, witness: Some(witness.into()), detail: Some(detail.into()) }
    }

    pub fn error(detail: impl ToString) -> Self {
        Outcome { holds: false, witness: None, detail: Some(detail.to_string()) }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

impl From<crate::prelie::IdentityCheck> for Outcome {
    fn from(c: crate::prelie::IdentityCheck) -> Self {
        Outcome { holds: c.holds, witness: c.witness, detail: c.detail }
    }
}

type TaskFn = Box<dyn Fn() -> Vec<(String, Outcome)> + Send + Sync>;

/// A unit of work producing one or more named outcomes.
pub struct Task {
    pub kind: CheckKind,
    pub scope: Scope,
    run: TaskFn,
}

impl Task {
    pub fn new(kind: CheckKind, scope: Scope, run: impl Fn() -> Vec<(String, Outcome)> + Send + Sync + 'static) -> Self {
        Task { kind, scope, run: Box::new(run) }
    }

    pub fn single(kind: CheckKind, id: &str, scope: Scope, run: impl Fn() -> Outcome + Send + Sync + 'static) -> Self {
        let id = id.to_string();
        Task::new(kind, scope, move || vec![(id.clone(), run())])
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub id: String,
    pub status: CheckStatus,
    pub scope: Scope,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    /// Wall time of the task that produced this check.
    pub wall_time_ms: f64,
}

/// Runs tasks on the rayon pool. Output order follows task order.
pub fn run_tasks(tasks: Vec<Task>) -> Vec<CheckReport> {
    tasks
        .into_par_iter()
        .map(|task| {
            let start = Instant::now();
            let outcomes = (task.run)();
            let ms = start.elapsed().as_secs_f64() * 1e3;
            outcomes
                .into_iter()
                .map(|(id, o)| CheckReport {
                    id,
                    status: match (task.kind, o.holds) {
                        (CheckKind::Theorem, true) => CheckStatus::ProvedPass,
                        (CheckKind::Theorem, false) => CheckStatus::ProvedFail,
                        (CheckKind::Conjecture, true) => CheckStatus::ConjectureConsistent,
                        (CheckKind::Conjecture, false) => CheckStatus::ConjectureCounterexample,
                    },
                    scope: task.scope.clone(),
                    witness: o.witness,
                    detail: o.detail,
                    wall_time_ms: ms,
                })
                .collect::<Vec<_>>()
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

pub fn run_theorem_suite(config: &SuiteConfig) -> Vec<CheckReport> {
    run_tasks(theorem_tasks(config))
}

pub fn run_conjecture_scan(limits: &ConjectureLimits) -> Vec<CheckReport> {
    run_tasks(conjecture_tasks(limits))
}

/// A full campaign.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub degree: usize,
    pub t_order: usize,
    pub seed: u64,
    pub checks: Vec<CheckReport>,
}

impl Report {
    pub fn proved_failures(&self) -> impl Iterator<Item = &CheckReport> {
        self.checks.iter().filter(|c| c.status == CheckStatus::ProvedFail)
    }

    pub fn counterexamples(&self) -> impl Iterator<Item = &CheckReport> {
        self.checks.iter().filter(|c| c.status == CheckStatus::ConjectureCounterexample)
    }

    /// 0 unless a proved identity failed.
    pub fn exit_code(&self) -> i32 {
        if self.proved_failures().next().is_some() {
            1
        } else {
            0
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }
}
