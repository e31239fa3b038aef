//! Scenario configuration, execution of the analyses and report emission
//! for the `realgauge` command.

pub mod config;
mod emit;
pub mod run;
pub mod scenarios;

pub use config::{load, parse_config, Scenario, ScenarioConfig, ANALYSES};
pub use emit::{emit, Format};
pub use run::{run_scenario, RunReport};
pub use scenarios::{run_named, SCENARIOS};

use serde_json::{json, Value};

/// Results of a scenario: one entry per configured algebra, scenario-level
/// checks and notes.
#[derive(Clone, Debug)]
pub struct Report {
    pub scenario: String,
    pub seed: u64,
    pub sample_count: usize,
    pub runs: Vec<RunReport>,
    pub checks: Vec<Value>,
    pub notes: Vec<String>,
    failed_checks: usize,
}

impl Report {
    pub fn new(scenario: &str, seed: u64, sample_count: usize) -> Self {
        Report { scenario: scenario.to_string(), seed, sample_count, runs: Vec::new(), checks: Vec::new(), notes: Vec::new(), failed_checks: 0 }
    }

    pub fn from_run(sc: &Scenario) -> Self {
        let mut r = Report::new(&sc.name, sc.seed, sc.sample_count);
        r.runs.push(run_scenario(sc));
        r
    }

    pub fn check(&mut self, v: Value, holds: bool) {
        if !holds {
            self.failed_checks += 1;
        }
        self.checks.push(v);
    }

    pub fn violations(&self) -> usize {
        self.failed_checks + self.runs.iter().map(|r| r.violations).sum::<usize>()
    }

    pub fn errors(&self) -> usize {
        self.runs.iter().map(|r| r.errors).sum()
    }

    /// No property violations and no analysis errors.
    pub fn ok(&self) -> bool {
        self.violations() == 0 && self.errors() == 0
    }

    pub fn to_json(&self) -> Value {
        json!({
            "scenario": self.scenario,
            "seed": self.seed,
            "sampleCount": self.sample_count,
            "runs": self.runs.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
            "checks": self.checks,
            "notes": self.notes,
            "violations": self.violations(),
            "errors": self.errors(),
            "ok": self.ok(),
        })
    }
}
