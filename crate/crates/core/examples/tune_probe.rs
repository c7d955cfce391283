//! Self-tuning probe: mean initial tolerances over N seeds per problem.
//! Usage: cargo run --release -p cpso-core --example tune_probe -- 25

use cpso_core::constraint::EvalCounters;
use cpso_core::rng::{component_rng, STREAM_SELF_TUNE};
use cpso_core::schedule::{self_tune_initial_tolerances, ScheduleConfig, ScheduleKind};
use cpso_core::suite::{get_problem, PROBLEM_NAMES};

fn main() {
    let seeds: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(25);
    let cfg = ScheduleConfig::for_protocol(ScheduleKind::PseudoAdaptive, 10_000);
    println!("prob  mean_tol_ineq  mean_tol_eq  in_window  mean_probes  mean_fr");
    for name in PROBLEM_NAMES {
        let (problem, meta) = get_problem(name).unwrap();
        let mut sum_i = 0.0;
        let mut sum_e = 0.0;
        let mut windows = 0;
        let mut probes = 0usize;
        let mut fr = 0.0;
        for seed in 1..=seeds {
            let mut rng = component_rng(seed, STREAM_SELF_TUNE);
            let mut counters = EvalCounters::default();
            let out = self_tune_initial_tolerances(&problem, &cfg, &mut rng, &mut counters);
            sum_i += out.tolerances.tol_ineq();
            sum_e += out.tolerances.tol_eq();
            windows += out.in_window as usize;
            probes += out.probes;
            fr += out.achieved_fr;
        }
        let n = seeds as f64;
        println!(
            "{}  {:12.4}  {:11.4}  {:>2}/{}  {:10.1}  {:8.2}   (table: ineq {:?} eq {:?})",
            name,
            sum_i / n,
            sum_e / n,
            windows,
            seeds,
            probes as f64 / n,
            fr / n,
            meta.mean_initial_tol_ineq,
            meta.mean_initial_tol_eq,
        );
    }
}
