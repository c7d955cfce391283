//! Per-run results and suite-level statistics.

use crate::constraint::EvalCounters;
use crate::schedule::{ScheduleKind, SelfTuneOutcome, UpdateKind};

/// One record per time-step of a run.
#[derive(Debug, Clone, Copy)]
pub struct TraceRecord {
    pub t: usize,
    /// Tolerances after this step's schedule update.
    pub tol_ineq: f64,
    pub tol_eq: f64,
    /// Percentage of feasible best experiences that drove the update.
    pub percent_feasible_pbests: f64,
    /// Lowest conflict among best experiences feasible under the *current*
    /// tolerances; NaN while none are. May rise as tolerances shrink.
    pub best_feasible_conflict: f64,
    /// Mean raw conflict over all best experiences.
    pub mean_pbest_conflict: f64,
    pub update: UpdateKind,
}

/// Outcome of one run.
#[derive(Debug, Clone)]
pub struct RunResult {
    pub run_index: usize,
    pub seed: u64,
    /// Best conflict among visited points feasible at the *final* tolerances
    /// (tol_ineq = 0, tol_eq = 1e-4); None if no such point was seen.
    pub best_conflict: Option<f64>,
    pub best_position: Option<Vec<f64>>,
    /// True when `best_conflict - known_optimum <= 1e-4`.
    pub success: bool,
    pub counters: EvalCounters,
    /// Percentage of feasible best experiences at the final time-step.
    pub final_percent_feasible_pbests: f64,
    pub initial_tol_ineq: f64,
    pub initial_tol_eq: f64,
    pub self_tune: Option<SelfTuneOutcome>,
    pub trace: Vec<TraceRecord>,
}

impl RunResult {
    pub fn found_feasible(&self) -> bool {
        self.best_conflict.is_some()
    }
}

/// Summary statistics over a batch of runs of one (problem, schedule)
/// configuration. Conflict statistics cover feasible runs only; runs that
/// never produced a finally-feasible point count against the feasibility
/// percentage but are excluded from best/median/mean/worst.
#[derive(Debug, Clone)]
pub struct SuiteStatistics {
    pub problem: String,
    pub schedule: ScheduleKind,
    /// Optimum as printed in the reference table.
    pub optimum: f64,
    pub n_runs: usize,
    pub best: Option<f64>,
    pub median: Option<f64>,
    pub mean: Option<f64>,
    pub worst: Option<f64>,
    pub feasible_pct: f64,
    pub success_pct: f64,
    pub mean_fes: f64,
    pub mean_ces: f64,
    pub mean_feasible_pbests_pct: f64,
}

/// Aggregates run results. The median of `n` feasible conflicts is the
/// `(n-1)/2`-th order statistic (the 13th of 25).
pub fn aggregate(
    problem: &str,
    schedule: ScheduleKind,
    optimum: f64,
    results: &[RunResult],
) -> SuiteStatistics {
    let n = results.len();
    let mut conflicts: Vec<f64> = results.iter().filter_map(|r| r.best_conflict).collect();
    conflicts.sort_by(f64::total_cmp);
    let feasible = conflicts.len();
    let successes = results.iter().filter(|r| r.success).count();
    let (best, median, mean, worst) = if conflicts.is_empty() {
        (None, None, None, None)
    } else {
        (
            Some(conflicts[0]),
            Some(conflicts[(feasible - 1) / 2]),
            Some(conflicts.iter().sum::<f64>() / feasible as f64),
            Some(conflicts[feasible - 1]),
        )
    };
    let denom = n.max(1) as f64;
    SuiteStatistics {
        problem: problem.to_string(),
        schedule,
        optimum,
        n_runs: n,
        best,
        median,
        mean,
        worst,
        feasible_pct: 100.0 * feasible as f64 / denom,
        success_pct: 100.0 * successes as f64 / denom,
        mean_fes: results.iter().map(|r| r.counters.fe as f64).sum::<f64>() / denom,
        mean_ces: results.iter().map(|r| r.counters.ce as f64).sum::<f64>() / denom,
        mean_feasible_pbests_pct: results
            .iter()
            .map(|r| r.final_percent_feasible_pbests)
            .sum::<f64>()
            / denom,
    }
}
