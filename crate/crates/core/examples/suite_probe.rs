//! Full-suite probe: 25-run statistics for one (problem, schedule) cell.
//! Usage: cargo run --release -p cpso-core --example suite_probe -- g03 adaptive

use cpso_core::harness::{run_suite, ExperimentConfig};
use cpso_core::ScheduleKind;
use std::time::Instant;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let problem = args.get(1).map(String::as_str).unwrap_or("g03");
    let schedule: ScheduleKind = args
        .get(2)
        .map(String::as_str)
        .unwrap_or("adaptive")
        .parse()
        .unwrap();
    let config = ExperimentConfig::protocol(problem, schedule);
    let t0 = Instant::now();
    let outcome = run_suite(&config).unwrap();
    let s = &outcome.stats;
    println!(
        "{} {:9} best={:?} median={:?} mean={:?} worst={:?} feas%={:.1} succ%={:.1} fe={:.0} ce={:.0} pbests%={:.2}  [{:.1?}]",
        s.problem,
        format!("{:?}", s.schedule),
        s.best,
        s.median,
        s.mean,
        s.worst,
        s.feasible_pct,
        s.success_pct,
        s.mean_fes,
        s.mean_ces,
        s.mean_feasible_pbests_pct,
        t0.elapsed()
    );
    if !outcome.failures.is_empty() {
        println!("failures: {:?}", outcome.failures);
    }
}
