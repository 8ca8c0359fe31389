//! Randomized verification of the Moore-Penrose identities for relations.
//!
//! Every registered check draws fresh inputs from a seed derived from
//! `(global seed, check name, trial index)`, evaluates one statement and
//! reports the worst residual among the comparisons it makes. Equalities
//! and inclusions are measured with projection-matrix residuals; inclusions
//! only in one direction.

mod checks;
pub mod gen;

use std::collections::BTreeMap;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub use checks::{
    gamma_identity_residual, lambda_samples, multiset_distance, Check, CheckKind, EQUALITY_TOL,
    GAMMA_TOL, REGISTRY, SPECTRAL_TOL,
};
pub use gen::{certify, random_relation, Generated, RelationFlavor};

use crate::{Error, Result, Tolerance};
use checks::{Abort, Ctx};

pub const REPORT_FORMAT: &str = "linrel-verify/1";

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub trials: usize,
    pub seed: u64,
    /// Inclusive range of ambient dimensions.
    pub dims: (usize, usize),
    /// Restrict to these checks; empty means all.
    pub checks: Vec<String>,
    pub tol: Tolerance,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            trials: 200,
            seed: 1,
            dims: (1, 5),
            checks: Vec::new(),
            tol: Tolerance::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessInput {
    pub label: String,
    pub relation: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub check: &'static str,
    pub trial: usize,
    pub seed: u64,
    pub status: Status,
    #[serde(serialize_with = "finite_or_null")]
    pub residual: f64,
    pub tolerance: f64,
    /// Comparison that produced the worst residual.
    pub clause: Option<String>,
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<WitnessInput>>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckSummary {
    pub name: &'static str,
    pub statement: &'static str,
    pub tolerance: f64,
    pub trials: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub worst_residual: f64,
    /// Counts keyed by `floor(log10(residual))`, clamped to `[-17, 0]`;
    /// exact zeros land in `-17`.
    pub histogram: BTreeMap<i32, usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NearViolation {
    pub check: &'static str,
    pub trial: usize,
    pub seed: u64,
    pub residual: f64,
    pub tolerance: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub format: &'static str,
    pub seed: u64,
    pub trials_per_check: usize,
    pub dims: [usize; 2],
    pub checks: Vec<CheckSummary>,
    pub near_violations: Vec<NearViolation>,
    pub failures: Vec<CheckResult>,
    pub skips: Vec<CheckResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_clock_seconds: Option<f64>,
}

impl SuiteReport {
    pub fn total_failed(&self) -> usize {
        self.checks.iter().map(|c| c.failed).sum()
    }

    pub fn all_passed(&self) -> bool {
        self.total_failed() == 0
    }

    /// The same report with timing removed; equal seeds give equal values.
    pub fn without_timing(&self) -> SuiteReport {
        SuiteReport { wall_clock_seconds: None, ..self.clone() }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn finite_or_null<S: serde::Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if x.is_finite() {
        s.serialize_f64(*x)
    } else {
        s.serialize_none()
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xCBF2_9CE4_8422_2325, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01B3)
    })
}

/// Seed of one trial; independent of scheduling and of which other checks run.
pub fn trial_seed(global: u64, check: &str, trial: usize) -> u64 {
    splitmix64(splitmix64(global) ^ fnv1a(check) ^ splitmix64(trial as u64).rotate_left(17))
}

pub fn find_check(name: &str) -> Option<&'static Check> {
    REGISTRY.iter().find(|c| c.name == name)
}

fn validate(config: &SuiteConfig) -> Result<()> {
    if config.trials == 0 {
        return Err(Error::Precondition("trials must be at least 1".into()));
    }
    if config.dims.0 > config.dims.1 {
        return Err(Error::Precondition(format!(
            "empty dimension range {}..{}",
            config.dims.0, config.dims.1
        )));
    }
    for name in &config.checks {
        if find_check(name).is_none() {
            return Err(Error::Precondition(format!("unknown check `{name}`")));
        }
    }
    Ok(())
}

/// Runs one trial of one check from its seed.
pub fn run_check(check: &'static Check, seed: u64, trial: usize, config: &SuiteConfig) -> CheckResult {
    let mut ctx = Ctx::new(ChaCha8Rng::seed_from_u64(seed), config.dims, config.tol);
    let tolerance = check.kind.tolerance();
    let outcome = (check.run)(&mut ctx);
    let (status, residual, detail) = match outcome {
        Ok(()) if ctx.worst <= tolerance => (Status::Pass, ctx.worst, None),
        Ok(()) => (Status::Fail, ctx.worst, None),
        Err(Abort::Skip(why)) => (Status::Skip, 0.0, Some(why)),
        Err(Abort::Lib(e)) => (Status::Fail, f64::INFINITY, Some(e.to_string())),
    };
    let witness = (status == Status::Fail).then(|| {
        ctx.witness()
            .into_iter()
            .map(|(label, relation)| WitnessInput { label, relation })
            .collect()
    });
    CheckResult {
        check: check.name,
        trial,
        seed,
        status,
        residual,
        tolerance,
        clause: ctx.worst_clause,
        detail,
        witness,
    }
}

fn selected(config: &SuiteConfig) -> Vec<&'static Check> {
    let mut out: Vec<&'static Check> = REGISTRY
        .iter()
        .filter(|c| config.checks.is_empty() || config.checks.iter().any(|n| n == c.name))
        .collect();
    out.sort_by_key(|c| c.name);
    out
}

/// Every trial of every selected check, ordered by check name then trial.
pub fn run_trials(config: &SuiteConfig) -> Result<Vec<CheckResult>> {
    validate(config)?;
    let tasks: Vec<(&'static Check, usize)> = selected(config)
        .into_iter()
        .flat_map(|c| (0..config.trials).map(move |i| (c, i)))
        .collect();
    let run = |&(c, i): &(&'static Check, usize)| run_check(c, trial_seed(config.seed, c.name, i), i, config);

    #[cfg(feature = "parallel")]
    let results: Vec<CheckResult> = {
        use rayon::prelude::*;
        tasks.par_iter().map(run).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let results: Vec<CheckResult> = tasks.iter().map(run).collect();
    Ok(results)
}

/// Runs every selected check `config.trials` times.
pub fn run_suite(config: &SuiteConfig) -> Result<SuiteReport> {
    let start = Instant::now();
    let results = run_trials(config)?;
    let mut report = summarize(config, &results);
    report.wall_clock_seconds = Some(start.elapsed().as_secs_f64());
    Ok(report)
}

fn decade(r: f64) -> i32 {
    if r <= 0.0 {
        return -17;
    }
    (r.log10().floor() as i32).clamp(-17, 0)
}

/// Report for results produced by [`run_trials`] under the same config.
pub fn summarize(config: &SuiteConfig, results: &[CheckResult]) -> SuiteReport {
    let mut checks = Vec::new();
    let mut near = Vec::new();
    let mut failures = Vec::new();
    let mut skips = Vec::new();
    for check in selected(config) {
        let mine: Vec<&CheckResult> = results.iter().filter(|r| r.check == check.name).collect();
        let tolerance = check.kind.tolerance();
        let mut summary = CheckSummary {
            name: check.name,
            statement: check.statement,
            tolerance,
            trials: mine.len(),
            passed: 0,
            failed: 0,
            skipped: 0,
            worst_residual: 0.0,
            histogram: BTreeMap::new(),
        };
        for r in mine {
            match r.status {
                Status::Pass => summary.passed += 1,
                Status::Fail => summary.failed += 1,
                Status::Skip => summary.skipped += 1,
            }
            if r.status != Status::Skip {
                *summary.histogram.entry(decade(r.residual)).or_default() += 1;
                summary.worst_residual = summary.worst_residual.max(r.residual);
            }
            match r.status {
                Status::Pass if r.residual * 10.0 > tolerance => near.push(NearViolation {
                    check: r.check,
                    trial: r.trial,
                    seed: r.seed,
                    residual: r.residual,
                    tolerance,
                }),
                Status::Fail => failures.push(r.clone()),
                Status::Skip => skips.push(r.clone()),
                Status::Pass => {}
            }
        }
        if !summary.worst_residual.is_finite() {
            summary.worst_residual = f64::MAX;
        }
        checks.push(summary);
    }
    SuiteReport {
        format: REPORT_FORMAT,
        seed: config.seed,
        trials_per_check: config.trials,
        dims: [config.dims.0, config.dims.1],
        checks,
        near_violations: near,
        failures,
        skips,
        wall_clock_seconds: None,
    }
}
