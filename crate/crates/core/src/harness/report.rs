//! Comma-separated summary and trace emission.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use super::stats::{RunResult, SuiteStatistics};
use super::SuiteOutcome;
use crate::error::Result;

/// Summary table header, one column per statistics field.
pub const SUMMARY_COLUMNS: [&str; 12] = [
    "problem",
    "optimum",
    "relaxation",
    "best",
    "median",
    "mean",
    "worst",
    "feasible_pct",
    "success_pct",
    "mean_fes",
    "mean_ces",
    "mean_feasible_pbests_pct",
];

/// Trace file header, one record per time-step.
pub const TRACE_COLUMNS: [&str; 6] = [
    "t",
    "tol_ineq",
    "tol_eq",
    "percent_feasible_pbests",
    "best_feasible_conflict",
    "mean_pbest_conflict",
];

/// Creates the output directory and verifies it is writable by writing and
/// removing a probe file. Called before any computation starts.
pub fn prepare_output_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir)?;
    let probe = dir.join(".write_probe");
    fs::write(&probe, b"ok")?;
    fs::remove_file(&probe)?;
    Ok(())
}

/// Two-decimal scientific notation in the `5.00E+05` style.
pub fn format_scientific(v: f64) -> String {
    if v == 0.0 {
        return "0.00E+00".to_string();
    }
    let sign = if v < 0.0 { "-" } else { "" };
    let a = v.abs();
    let mut exp = a.log10().floor() as i32;
    let mut mantissa = a / 10f64.powi(exp);
    if format!("{mantissa:.2}") == "10.00" {
        mantissa = 1.0;
        exp += 1;
    }
    let esign = if exp < 0 { "-" } else { "+" };
    format!("{sign}{mantissa:.2}E{esign}{:02}", exp.abs())
}

fn conflict_cell(v: Option<f64>) -> String {
    match v {
        Some(v) => format!("{v:.6}"),
        None => "NA".to_string(),
    }
}

fn summary_line(s: &SuiteStatistics) -> String {
    format!(
        "{},{:.6},{},{},{},{},{},{:.2},{:.2},{},{},{:.2}",
        s.problem,
        s.optimum,
        s.schedule.as_str(),
        conflict_cell(s.best),
        conflict_cell(s.median),
        conflict_cell(s.mean),
        conflict_cell(s.worst),
        s.feasible_pct,
        s.success_pct,
        format_scientific(s.mean_fes),
        format_scientific(s.mean_ces),
        s.mean_feasible_pbests_pct,
    )
}

/// Writes `summary.csv` (one row per outcome), per-run trace files, and the
/// cross-run averaged trace for each outcome. Returns the summary path.
pub fn emit_reports(out_dir: &Path, outcomes: &[SuiteOutcome]) -> Result<PathBuf> {
    prepare_output_dir(out_dir)?;
    let summary_path = out_dir.join("summary.csv");
    let mut summary = BufWriter::new(fs::File::create(&summary_path)?);
    writeln!(summary, "{}", SUMMARY_COLUMNS.join(","))?;
    for outcome in outcomes {
        writeln!(summary, "{}", summary_line(&outcome.stats))?;
    }
    summary.flush()?;

    for outcome in outcomes {
        let dir = out_dir.join(format!(
            "{}_{}",
            outcome.stats.problem,
            outcome.stats.schedule.as_str()
        ));
        fs::create_dir_all(&dir)?;
        for run in &outcome.results {
            write_trace(&dir.join(format!("run_{:02}.csv", run.run_index)), run)?;
        }
        write_mean_trace(&dir.join("trace_mean.csv"), &outcome.results)?;
    }
    Ok(summary_path)
}

fn write_trace(path: &Path, run: &RunResult) -> Result<()> {
    let mut w = BufWriter::new(fs::File::create(path)?);
    writeln!(w, "{}", TRACE_COLUMNS.join(","))?;
    for r in &run.trace {
        writeln!(
            w,
            "{},{},{},{},{},{}",
            r.t,
            r.tol_ineq,
            r.tol_eq,
            r.percent_feasible_pbests,
            r.best_feasible_conflict,
            r.mean_pbest_conflict,
        )?;
    }
    w.flush()?;
    Ok(())
}

/// Arithmetic mean of the per-run traces at each time-step. NaN cells (no
/// feasible best experience yet in some run) propagate to the average.
fn write_mean_trace(path: &Path, runs: &[RunResult]) -> Result<()> {
    let mut w = BufWriter::new(fs::File::create(path)?);
    writeln!(w, "{}", TRACE_COLUMNS.join(","))?;
    if runs.is_empty() {
        w.flush()?;
        return Ok(());
    }
    let t_max = runs.iter().map(|r| r.trace.len()).min().unwrap_or(0);
    let n = runs.len() as f64;
    for idx in 0..t_max {
        let mut tol_ineq = 0.0;
        let mut tol_eq = 0.0;
        let mut per = 0.0;
        let mut best = 0.0;
        let mut mean_conflict = 0.0;
        for r in runs {
            let rec = &r.trace[idx];
            tol_ineq += rec.tol_ineq;
            tol_eq += rec.tol_eq;
            per += rec.percent_feasible_pbests;
            best += rec.best_feasible_conflict;
            mean_conflict += rec.mean_pbest_conflict;
        }
        writeln!(
            w,
            "{},{},{},{},{},{}",
            idx + 1,
            tol_ineq / n,
            tol_eq / n,
            per / n,
            best / n,
            mean_conflict / n,
        )?;
    }
    w.flush()?;
    Ok(())
}
