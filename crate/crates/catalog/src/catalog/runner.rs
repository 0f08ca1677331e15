use std::cmp::Ordering;
use std::collections::BTreeMap;

use isodyn_core::GeomError;
use rayon::prelude::*;
use serde::Serialize;

use super::{Catalog, CatalogEntry, CatalogError, Tier, TolClass};
use crate::dsl::{evaluate, EvalContext, EvalError, Program};
use crate::sampler::TriangleClass;

/// Failing residuals at or below this are numerical misses, not wrong
/// statements.
pub const NUMERICAL_BAND: f64 = 1e-5;

/// Fraction of requested trials that must complete for a pass.
const MIN_COVERAGE: f64 = 0.9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RunConfig {
    pub trials: usize,
    pub seed: u64,
    pub tol: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            trials: 200,
            seed: 42,
            tol: 1e-7,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    FailedReconstruction,
    PassVacuous,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FailureClass {
    /// Every failing residual is within [`NUMERICAL_BAND`].
    Tolerance,
    Logic,
    /// Too many degenerate trials.
    Coverage,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TrialCounts {
    pub requested: usize,
    pub completed: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AssertionReport {
    pub kind: String,
    pub call: String,
    pub tol_class: TolClass,
    pub tolerance: f64,
    pub max_residual: Option<f64>,
    /// Completed trials whose residual exceeded the tolerance.
    pub failures: usize,
    pub anchor: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RejectedVariant {
    pub label: String,
    pub verdict: Verdict,
    pub completed: usize,
    pub max_residuals: Vec<Option<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub id: String,
    pub title: String,
    pub tier: Tier,
    pub class: String,
    pub verdict: Verdict,
    pub failure: Option<FailureClass>,
    /// Label of the program variant the verdict rests on.
    pub variant: String,
    pub rejected_variants: Vec<RejectedVariant>,
    pub seed: u64,
    pub tolerance: f64,
    pub trials: TrialCounts,
    pub skips: usize,
    pub skip_causes: BTreeMap<String, usize>,
    pub assertions: Vec<AssertionReport>,
}

/// Aggregate result of a run, ordered by severity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Pass,
    ToleranceFailure,
    LogicFailure,
}

impl Outcome {
    /// Only textual entries decide the outcome; reconstructed entries are
    /// quarantined and controls are expected to fail.
    pub fn of(reports: &[VerificationReport]) -> Outcome {
        reports
            .iter()
            .filter(|r| r.tier == Tier::Textual && r.verdict == Verdict::Fail)
            .map(|r| match r.failure {
                Some(FailureClass::Tolerance) => Outcome::ToleranceFailure,
                _ => Outcome::LogicFailure,
            })
            .max()
            .unwrap_or(Outcome::Pass)
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Pass => 0,
            Outcome::LogicFailure => 1,
            Outcome::ToleranceFailure => 3,
        }
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

/// Seed of trial `trial` of stream `id`; independent of scheduling.
pub fn trial_seed(seed: u64, id: &str, trial: u64) -> u64 {
    splitmix64(seed ^ splitmix64(fnv1a(id) ^ splitmix64(trial)))
}

/// Per-assertion statistics of one program over a batch of trials.
#[derive(Debug, Clone, PartialEq)]
pub struct ProgramStats {
    pub completed: usize,
    pub skipped: usize,
    pub skip_causes: BTreeMap<String, usize>,
    pub max_residuals: Vec<Option<f64>>,
    pub failures: Vec<usize>,
}

fn cause_key(e: &GeomError) -> String {
    let dbg = format!("{e:?}");
    dbg.split(|c: char| !c.is_alphanumeric())
        .next()
        .unwrap_or_default()
        .to_string()
}

/// Evaluates `program` on `trials` seeded instances of `class`; residuals
/// are compared against `tolerances[i]` for the `i`-th assertion.
pub fn run_program(
    program: &Program,
    class: TriangleClass,
    stream: &str,
    trials: usize,
    seed: u64,
    tolerances: &[f64],
) -> Result<ProgramStats, EvalError> {
    let n = program.assertions().count();
    let results: Vec<Result<Vec<f64>, EvalError>> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut ctx = EvalContext::new(class, trial_seed(seed, stream, i as u64));
            evaluate(program, &mut ctx).map(|e| e.residuals.iter().map(|r| r.value).collect())
        })
        .collect();
    let mut stats = ProgramStats {
        completed: 0,
        skipped: 0,
        skip_causes: BTreeMap::new(),
        max_residuals: vec![None; n],
        failures: vec![0; n],
    };
    for r in results {
        match r {
            Ok(res) => {
                stats.completed += 1;
                for (i, v) in res.into_iter().enumerate() {
                    let m = stats.max_residuals[i].get_or_insert(v);
                    *m = m.max(v);
                    if !(v <= tolerances[i]) {
                        stats.failures[i] += 1;
                    }
                }
            }
            Err(EvalError::Construction { cause, .. }) => {
                stats.skipped += 1;
                *stats.skip_causes.entry(cause_key(&cause)).or_default() += 1;
            }
            Err(e) => return Err(e),
        }
    }
    Ok(stats)
}

fn judge(stats: &ProgramStats, tier: Tier, trials: usize) -> (Verdict, Option<FailureClass>) {
    if trials == 0 {
        return (Verdict::PassVacuous, None);
    }
    let failing: Vec<f64> = stats
        .failures
        .iter()
        .zip(&stats.max_residuals)
        .filter(|(f, _)| **f > 0)
        .map(|(_, m)| m.unwrap_or(f64::INFINITY))
        .collect();
    let class = if !failing.is_empty() {
        if failing.iter().all(|m| *m <= NUMERICAL_BAND) {
            Some(FailureClass::Tolerance)
        } else {
            Some(FailureClass::Logic)
        }
    } else if (stats.completed as f64) < MIN_COVERAGE * trials as f64 {
        Some(FailureClass::Coverage)
    } else {
        None
    };
    match (class, tier) {
        (None, _) => (Verdict::Pass, None),
        (Some(c), Tier::Reconstructed) => (Verdict::FailedReconstruction, Some(c)),
        (Some(c), _) => (Verdict::Fail, Some(c)),
    }
}

/// Runs one entry. Deterministic in `(id, cfg)`.
pub fn run_entry(catalog: &Catalog, id: &str, cfg: &RunConfig) -> Result<VerificationReport, CatalogError> {
    let entry = catalog
        .get(id)
        .ok_or_else(|| CatalogError::UnknownEntry(id.to_string()))?;
    run_catalog_entry(entry, cfg)
}

fn run_catalog_entry(entry: &CatalogEntry, cfg: &RunConfig) -> Result<VerificationReport, CatalogError> {
    let tolerances: Vec<f64> = entry.assertions.iter().map(|a| cfg.tol * a.tol.factor()).collect();
    let run = |program: &Program| {
        run_program(program, entry.class, &entry.id, cfg.trials, cfg.seed, &tolerances).map_err(|e| {
            CatalogError::Eval {
                id: entry.id.clone(),
                message: e.to_string(),
            }
        })
    };
    let mut label = entry.primary.label.clone();
    let mut stats = run(&entry.primary.program)?;
    let (mut verdict, mut failure) = judge(&stats, entry.tier, cfg.trials);
    let mut rejected = Vec::new();
    if verdict != Verdict::Pass && verdict != Verdict::PassVacuous {
        if let Some(alt) = &entry.alternate {
            let alt_stats = run(&alt.program)?;
            let (alt_verdict, alt_failure) = judge(&alt_stats, entry.tier, cfg.trials);
            let (loser_label, loser_stats, loser_verdict) = if alt_verdict == Verdict::Pass {
                let old = std::mem::replace(&mut stats, alt_stats);
                let old_label = std::mem::replace(&mut label, alt.label.clone());
                let old_verdict = verdict;
                (verdict, failure) = (alt_verdict, alt_failure);
                (old_label, old, old_verdict)
            } else {
                (alt.label.clone(), alt_stats, alt_verdict)
            };
            rejected.push(RejectedVariant {
                label: loser_label,
                verdict: loser_verdict,
                completed: loser_stats.completed,
                max_residuals: loser_stats.max_residuals,
            });
        }
    }
    let assertions = entry
        .assertions
        .iter()
        .enumerate()
        .map(|(i, a)| AssertionReport {
            kind: a.kind.name().to_string(),
            call: a.call.clone(),
            tol_class: a.tol,
            tolerance: tolerances[i],
            max_residual: stats.max_residuals[i],
            failures: stats.failures[i],
            anchor: a.anchor.clone(),
        })
        .collect();
    Ok(VerificationReport {
        id: entry.id.clone(),
        title: entry.title.clone(),
        tier: entry.tier,
        class: entry.class.to_string(),
        verdict,
        failure,
        variant: label,
        rejected_variants: rejected,
        seed: cfg.seed,
        tolerance: cfg.tol,
        trials: TrialCounts {
            requested: cfg.trials,
            completed: stats.completed,
            skipped: stats.skipped,
        },
        skips: stats.skipped,
        skip_causes: stats.skip_causes,
        assertions,
    })
}

/// Runs every entry; reports come back in catalog order whatever the
/// scheduling.
/// Runs every entry; reports come back in [`id_order`], whatever the
/// scheduling.
pub fn run_all(catalog: &Catalog, cfg: &RunConfig) -> Result<Vec<VerificationReport>, CatalogError> {
    let mut reports = catalog
        .entries
        .par_iter()
        .map(|e| run_catalog_entry(e, cfg))
        .collect::<Result<Vec<_>, _>>()?;
    reports.sort_by(|a, b| id_order(&a.id, &b.id));
    Ok(reports)
}

/// Natural order on entry ids: `iso-2 < iso-10 < iso-102 < iso-102-extra`.
pub fn id_order(a: &str, b: &str) -> Ordering {
    fn key(id: &str) -> (&str, u64, &str) {
        let start = id.find(|c: char| c.is_ascii_digit()).unwrap_or(id.len());
        let end = id[start..]
            .find(|c: char| !c.is_ascii_digit())
            .map_or(id.len(), |i| start + i);
        (&id[..start], id[start..end].parse().unwrap_or(0), &id[end..])
    }
    key(a).cmp(&key(b))
}
