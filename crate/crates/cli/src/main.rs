//! `cpso`: benchmark harness CLI for the constrained particle swarm library.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use cpso_core::harness::report::{emit_reports, format_scientific, prepare_output_dir};
use cpso_core::harness::{run_suite, ExperimentConfig, SuiteOutcome};
use cpso_core::rng::{component_rng, STREAM_FR};
use cpso_core::suite::{estimate_feasibility_ratio, get_problem, metadata, PROBLEM_NAMES};
use cpso_core::{ScheduleKind, ToleranceState};

#[derive(Parser)]
#[command(
    name = "cpso",
    about = "Constrained particle swarm optimizer with self-tuned tolerance relaxation",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the benchmark protocol for one problem (or all) and write reports.
    Run(RunArgs),
    /// Estimate a feasibility ratio by uniform sampling (offline, no CE
    /// accounting).
    Fr(FrArgs),
    /// Print the benchmark metadata table as CSV.
    Problems,
}

#[derive(Args)]
struct RunArgs {
    /// TOML config file; explicit flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Problem name g01..g13, or `all`.
    #[arg(long)]
    problem: Option<String>,
    /// Tolerance schedule: none | exp | adaptive.
    #[arg(long)]
    schedule: Option<String>,
    /// Number of seeded runs.
    #[arg(long)]
    runs: Option<usize>,
    /// Swarm size.
    #[arg(long)]
    particles: Option<usize>,
    /// Time-steps per run.
    #[arg(long)]
    steps: Option<usize>,
    /// Base seed; run i uses base_seed + i.
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory for summary.csv and trace files.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Samples per self-tuning probe.
    #[arg(long)]
    probe_budget: Option<usize>,
    /// Self-tuning target feasibility-ratio window, as `LO,HI` percent.
    #[arg(long)]
    target_fr: Option<String>,
    /// Forward links per particle in the ring topology.
    #[arg(long)]
    links: Option<usize>,
}

#[derive(Args)]
struct FrArgs {
    #[arg(long)]
    problem: String,
    /// Inequality violation tolerance (values at or below 1e-5 snap to zero).
    #[arg(long, default_value_t = 0.0)]
    tol_ineq: f64,
    /// Equality violation tolerance; zero means exact equalities.
    #[arg(long, default_value_t = 0.0)]
    tol_eq: f64,
    #[arg(long, default_value_t = 1_000_000)]
    samples: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

/// TOML file schema; every field optional, flags take precedence.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    problem: Option<String>,
    schedule: Option<String>,
    runs: Option<usize>,
    particles: Option<usize>,
    steps: Option<usize>,
    seed: Option<u64>,
    out: Option<PathBuf>,
    probe_budget: Option<usize>,
    target_fr: Option<[f64; 2]>,
    links: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Fr(args) => cmd_fr(args),
        Command::Problems => cmd_problems(),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn parse_target_fr(text: &str) -> Result<(f64, f64), String> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("expected `LO,HI`, got `{text}`"));
    }
    let lo: f64 = parts[0].trim().parse().map_err(|e| format!("bad LO: {e}"))?;
    let hi: f64 = parts[1].trim().parse().map_err(|e| format!("bad HI: {e}"))?;
    Ok((lo, hi))
}

fn cmd_run(args: RunArgs) -> Result<(), String> {
    let file: FileConfig = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
            toml::from_str(&text).map_err(|e| format!("bad config {}: {e}", path.display()))?
        }
        None => FileConfig::default(),
    };

    let problem_arg = args
        .problem
        .or(file.problem)
        .ok_or("missing --problem (or `problem` in the config file)")?;
    let schedule_arg = args
        .schedule
        .or(file.schedule)
        .unwrap_or_else(|| "adaptive".to_string());
    let schedule = ScheduleKind::from_str(&schedule_arg).map_err(|e| e.to_string())?;
    let out_dir = args
        .out
        .or(file.out)
        .ok_or("missing --out (or `out` in the config file)")?;

    let problems: Vec<String> = if problem_arg == "all" {
        PROBLEM_NAMES.iter().map(|s| s.to_string()).collect()
    } else {
        vec![problem_arg]
    };

    let mut template = ExperimentConfig::protocol("g01", schedule);
    if let Some(v) = args.runs.or(file.runs) {
        template.n_runs = v;
    }
    if let Some(v) = args.particles.or(file.particles) {
        template.n_particles = v;
    }
    if let Some(v) = args.steps.or(file.steps) {
        template.t_max = v;
    }
    if let Some(v) = args.seed.or(file.seed) {
        template.base_seed = v;
    }
    if let Some(v) = args.probe_budget.or(file.probe_budget) {
        template.probe_budget = v;
    }
    if let Some(v) = args.links.or(file.links) {
        template.links_per_particle = v;
    }
    if let Some(text) = &args.target_fr {
        template.target_fr = parse_target_fr(text)?;
    } else if let Some([lo, hi]) = file.target_fr {
        template.target_fr = (lo, hi);
    }

    // fail on an unwritable output path before any computation starts
    prepare_output_dir(&out_dir).map_err(|e| format!("output dir: {e}"))?;

    let mut outcomes: Vec<SuiteOutcome> = Vec::new();
    for name in &problems {
        let mut config = template.clone();
        config.problem = name.clone();
        config.validate().map_err(|e| e.to_string())?;
        let outcome = run_suite(&config).map_err(|e| e.to_string())?;
        print_outcome(&outcome);
        outcomes.push(outcome);
    }

    let summary = emit_reports(&out_dir, &outcomes).map_err(|e| e.to_string())?;
    println!("summary written to {}", summary.display());
    Ok(())
}

fn print_outcome(outcome: &SuiteOutcome) {
    let s = &outcome.stats;
    let cell = |v: Option<f64>| v.map_or("NA".to_string(), |v| format!("{v:.6}"));
    println!(
        "{} {}: best {} median {} mean {} worst {} | feasible {:.2}% success {:.2}% | FEs {} CEs {} | feasible pbests {:.2}%",
        s.problem,
        s.schedule.as_str(),
        cell(s.best),
        cell(s.median),
        cell(s.mean),
        cell(s.worst),
        s.feasible_pct,
        s.success_pct,
        format_scientific(s.mean_fes),
        format_scientific(s.mean_ces),
        s.mean_feasible_pbests_pct,
    );
    for (run, err) in &outcome.failures {
        eprintln!("  run {run} failed: {err}");
    }
}

fn cmd_fr(args: FrArgs) -> Result<(), String> {
    let (problem, _) = get_problem(&args.problem).map_err(|e| e.to_string())?;
    if args.samples == 0 {
        return Err("samples must be positive".into());
    }
    let tol = ToleranceState::offline(args.tol_ineq, args.tol_eq);
    let mut rng = component_rng(args.seed, STREAM_FR);
    let fr = estimate_feasibility_ratio(&problem, &tol, args.samples, &mut rng, None);
    println!(
        "{} FR {:.4} % (tol_ineq={}, tol_eq={}, samples={}, seed={})",
        args.problem,
        fr,
        tol.tol_ineq(),
        tol.tol_eq(),
        args.samples,
        args.seed
    );
    Ok(())
}

fn cmd_problems() -> Result<(), String> {
    println!(
        "name,optimum,dimension,n_inequality,n_equality,fr_no_tolerance,fr_desired_tolerance,fr_initial_tolerance,mean_initial_tol_ineq,mean_initial_tol_eq"
    );
    for name in PROBLEM_NAMES {
        let m = metadata(name).expect("registered problem");
        let cell = |v: Option<f64>| v.map_or("NA".to_string(), |v| format!("{v}"));
        println!(
            "{},{:.6},{},{},{},{},{},{},{},{}",
            m.name,
            m.table_optimum,
            m.dimension,
            m.n_inequality,
            m.n_equality,
            m.fr_no_tolerance,
            m.fr_desired_tolerance,
            m.fr_initial_tolerance,
            cell(m.mean_initial_tol_ineq),
            cell(m.mean_initial_tol_eq),
        );
    }
    Ok(())
}
