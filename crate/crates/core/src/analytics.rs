//! Run logs and the statistics computed from them: ERT, success rates,
//! target selection, normalised ERT matrices, fixed-target curves and the
//! best crossover probability of a sweep.
//!
//! Conventions:
//! * ERT is the total number of evaluations spent by all runs divided by the
//!   number of runs that reached the target; a run that missed is charged its
//!   whole budget.
//! * Fixed-target curves charge the whole budget to runs that never reach a
//!   target, so they stay finite and non-decreasing.
//! * Percentiles use the nearest-rank method on the ascending sample.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Why a run stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Termination {
    TargetHit,
    BudgetExhausted,
    /// Crossover-only run whose population collapsed to one genome.
    Converged,
    GenerationLimit,
}

impl Termination {
    pub fn label(&self) -> &'static str {
        match self {
            Termination::TargetHit => "target-hit",
            Termination::BudgetExhausted => "budget-exhausted",
            Termination::Converged => "converged",
            Termination::GenerationLimit => "generation-limit",
        }
    }

    pub fn from_label(s: &str) -> Option<Self> {
        match s {
            "target-hit" => Some(Termination::TargetHit),
            "budget-exhausted" => Some(Termination::BudgetExhausted),
            "converged" => Some(Termination::Converged),
            "generation-limit" => Some(Termination::GenerationLimit),
            _ => None,
        }
    }
}

/// Best-so-far improvement event.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Improvement {
    /// Evaluations used when the improving point was evaluated.
    pub evals: u64,
    pub best: f64,
}

/// Trajectory of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunLog {
    /// Strictly increasing in both coordinates.
    pub events: Vec<Improvement>,
    pub final_evals: u64,
    pub budget: u64,
    pub hit_target: bool,
    pub termination: Termination,
    /// Fitness of every true evaluation, in order; only filled on request.
    pub trace: Option<Vec<f64>>,
}

impl RunLog {
    pub fn best(&self) -> Option<f64> {
        self.events.last().map(|e| e.best)
    }

    /// Evaluations until the first point with fitness `>= target`, if any.
    pub fn first_hit(&self, target: f64) -> Option<u64> {
        self.events.iter().find(|e| e.best >= target).map(|e| e.evals)
    }

    /// First-hit time, or the full budget when the target was never reached.
    pub fn penalized_runtime(&self, target: f64) -> u64 {
        self.first_hit(target).unwrap_or(self.budget)
    }

    /// Checks the structural invariants of a log.
    pub fn is_well_formed(&self) -> bool {
        let increasing = self
            .events
            .windows(2)
            .all(|w| w[0].evals < w[1].evals && w[0].best < w[1].best);
        let within = self.final_evals <= self.budget
            && self.events.last().is_none_or(|e| e.evals <= self.final_evals);
        increasing && within
    }
}

/// ERT of a set of runs for one target.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErtEstimate {
    /// `f64::INFINITY` when no run succeeded.
    pub ert: f64,
    pub success_rate: f64,
    pub runs: usize,
    pub successes: usize,
}

pub fn compute_ert(logs: &[RunLog], target: f64) -> Result<ErtEstimate> {
    if logs.is_empty() {
        return Err(Error::EmptyLogs);
    }
    let mut total = 0u64;
    let mut successes = 0usize;
    for log in logs {
        match log.first_hit(target) {
            Some(t) => {
                total += t;
                successes += 1;
            }
            None => total += log.budget,
        }
    }
    let ert = if successes == 0 {
        f64::INFINITY
    } else {
        total as f64 / successes as f64
    };
    Ok(ErtEstimate {
        ert,
        success_rate: successes as f64 / logs.len() as f64,
        runs: logs.len(),
        successes,
    })
}

/// Mean and sample standard deviation of penalised runtimes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RuntimeStats {
    pub mean: f64,
    pub std_dev: f64,
    pub runs: usize,
}

impl RuntimeStats {
    /// Coefficient of variation `std_dev / mean`.
    pub fn cv(&self) -> f64 {
        self.std_dev / self.mean
    }
}

pub fn runtime_stats(logs: &[RunLog], target: f64) -> Result<RuntimeStats> {
    let values: Vec<f64> = logs
        .iter()
        .map(|l| l.penalized_runtime(target) as f64)
        .collect();
    mean_std(&values)
}

pub fn mean_std(values: &[f64]) -> Result<RuntimeStats> {
    if values.is_empty() {
        return Err(Error::EmptyLogs);
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = if values.len() > 1 {
        values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0)
    } else {
        0.0
    };
    Ok(RuntimeStats {
        mean,
        std_dev: libm::sqrt(var),
        runs: values.len(),
    })
}

/// Nearest-rank percentile: the `⌈q·N⌉`-th smallest value (at least the first).
pub fn percentile_nearest_rank(values: &[f64], q: f64) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::EmptyLogs);
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let rank = libm::ceil(q * sorted.len() as f64) as usize;
    Ok(sorted[rank.clamp(1, sorted.len()) - 1])
}

/// Percentile used for target selection.
pub const TARGET_PERCENTILE: f64 = 0.02;

/// Target for one problem: the largest, over algorithms, of the 2% percentile
/// of the final best fitness values of that algorithm's runs.
pub fn select_target<S: AsRef<[f64]>>(best_values: &[S]) -> Result<f64> {
    if best_values.is_empty() {
        return Err(Error::EmptyLogs);
    }
    best_values
        .iter()
        .map(|v| percentile_nearest_rank(v.as_ref(), TARGET_PERCENTILE))
        .try_fold(f64::NEG_INFINITY, |acc, p| Ok(acc.max(p?)))
}

/// One `(algorithm, problem, target)` aggregate.
#[derive(Debug, Clone, PartialEq)]
pub struct ErtRow {
    pub algorithm: String,
    pub problem: u32,
    pub dimension: usize,
    pub target: f64,
    pub ert: f64,
    pub success_rate: f64,
    pub runs: usize,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ErtTable {
    pub rows: Vec<ErtRow>,
}

impl ErtTable {
    pub fn push(
        &mut self,
        algorithm: &str,
        problem: u32,
        dimension: usize,
        target: f64,
        est: &ErtEstimate,
    ) {
        self.rows.push(ErtRow {
            algorithm: algorithm.into(),
            problem,
            dimension,
            target,
            ert: est.ert,
            success_rate: est.success_rate,
            runs: est.runs,
        });
    }

    pub fn get(&self, algorithm: &str, problem: u32, dimension: usize) -> Option<&ErtRow> {
        self.rows
            .iter()
            .find(|r| r.algorithm == algorithm && r.problem == problem && r.dimension == dimension)
    }
}

/// Cap applied to normalised ERT values.
pub const NORMALIZED_ERT_CAP: f64 = 40.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NormalizedCell {
    /// `min(ERT / ERT_best, cap)`.
    Value(f64),
    /// Every run of this configuration missed the target.
    Failed,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedRow {
    pub algorithm: String,
    pub problem: u32,
    pub dimension: usize,
    pub cell: NormalizedCell,
}

/// Divides every ERT by the best ERT of the same `(problem, dimension)` and caps at 40.
pub fn normalize_ert(table: &ErtTable) -> Vec<NormalizedRow> {
    table
        .rows
        .iter()
        .map(|row| {
            let best = table
                .rows
                .iter()
                .filter(|r| r.problem == row.problem && r.dimension == row.dimension)
                .map(|r| r.ert)
                .fold(f64::INFINITY, f64::min);
            let cell = if row.ert.is_finite() && best.is_finite() {
                NormalizedCell::Value((row.ert / best).min(NORMALIZED_ERT_CAP))
            } else {
                NormalizedCell::Failed
            };
            NormalizedRow {
                algorithm: row.algorithm.clone(),
                problem: row.problem,
                dimension: row.dimension,
                cell,
            }
        })
        .collect()
}

/// Cell of the fast-vs-standard mutation comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ComparisonCell {
    /// `(ERT_fast - ERT_sbm) / ERT_sbm`, bounded to `[-1, 1]`.
    Value(f64),
    FastFailed,
    SbmFailed,
    BothFailed,
}

pub fn relative_ert_difference(ert_fast: f64, ert_sbm: f64) -> ComparisonCell {
    match (ert_fast.is_finite(), ert_sbm.is_finite()) {
        (true, true) => ComparisonCell::Value(((ert_fast - ert_sbm) / ert_sbm).clamp(-1.0, 1.0)),
        (false, true) => ComparisonCell::FastFailed,
        (true, false) => ComparisonCell::SbmFailed,
        (false, false) => ComparisonCell::BothFailed,
    }
}

/// Mean first-hitting evaluation count for each target (penalised by budget).
pub fn fixed_target_curve(logs: &[RunLog], targets: &[f64]) -> Result<Vec<f64>> {
    if logs.is_empty() {
        return Err(Error::EmptyLogs);
    }
    let runs = logs.len() as f64;
    Ok(targets
        .iter()
        .map(|&t| logs.iter().map(|l| l.penalized_runtime(t) as f64).sum::<f64>() / runs)
        .collect())
}

/// Forward differences `curve[i] - curve[i - 1]`, `i >= 1`.
pub fn curve_gradient(curve: &[f64]) -> Vec<f64> {
    curve.windows(2).map(|w| w[1] - w[0]).collect()
}

/// Crossover probability with the smallest finite ERT; ties go to the smaller `p_c`.
pub fn best_pc(ert_by_pc: &[(f64, f64)]) -> Result<f64> {
    let mut best: Option<(f64, f64)> = None;
    for &(pc, ert) in ert_by_pc {
        if !ert.is_finite() {
            continue;
        }
        best = match best {
            Some((bpc, bert)) if bert < ert || (bert == ert && bpc <= pc) => Some((bpc, bert)),
            _ => Some((pc, ert)),
        };
    }
    best.map(|(pc, _)| pc).ok_or(Error::NoFiniteErt)
}
