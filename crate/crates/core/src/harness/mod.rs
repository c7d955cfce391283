//! Experiment orchestration: the per-run loop and suite-level batches.

pub mod report;
pub mod stats;

use rayon::prelude::*;

use crate::constraint::{
    EvalCounters, PenalizedProblem, PenaltyConfig, PointEvaluation, Problem,
    ToleranceState, DEFAULT_PENALTY_K, FINAL_TOL_EQ,
};
use crate::error::{Error, Result};
use crate::rng::{component_rng, particle_rngs, STREAM_INIT, STREAM_SELF_TUNE};
use crate::schedule::{
    self_tune_initial_tolerances, ScheduleConfig, ScheduleKind, Scheduler, UpdateKind,
};
use crate::suite::{get_problem, latin_hypercube_init};
use crate::swarm::{
    build_forward_topology, classical_coefficients, rrr1_coefficients, rrr2_coefficients,
    CoefficientSet, Swarm,
};

pub use stats::{aggregate, RunResult, SuiteStatistics, TraceRecord};

/// A run succeeds when its best finally-feasible conflict is within this
/// error of the known optimum.
pub const SUCCESS_ERROR: f64 = 1e-4;

/// Full experiment description for one (problem, schedule) batch.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub problem: String,
    pub schedule: ScheduleKind,
    pub n_runs: usize,
    pub n_particles: usize,
    pub t_max: usize,
    pub base_seed: u64,
    pub penalty_k: f64,
    /// Forward links per particle in the ring topology.
    pub links_per_particle: usize,
    /// Latin Hypercube candidate designs per initialization.
    pub lhs_candidates: usize,
    /// Samples per self-tuning probe.
    pub probe_budget: usize,
    /// Target feasibility-ratio window for self-tuning, percent.
    pub target_fr: (f64, f64),
    /// One coefficient set per sub-neighbourhood, assigned to contiguous
    /// blocks over the ring in order.
    pub coefficient_sets: Vec<CoefficientSet>,
}

impl ExperimentConfig {
    /// The benchmark protocol: 50 particles, 10000 steps, 25 runs, k = 1e6,
    /// three sub-neighbourhoods (RRR2 aw=2.40, RRR1 aw=1.80, classical
    /// w=0.7298 / aw=2.9922 split evenly).
    pub fn protocol(problem: &str, schedule: ScheduleKind) -> Self {
        Self {
            problem: problem.to_string(),
            schedule,
            n_runs: 25,
            n_particles: 50,
            t_max: 10_000,
            base_seed: 1,
            penalty_k: DEFAULT_PENALTY_K,
            links_per_particle: 4,
            lhs_candidates: 1000,
            probe_budget: 1000,
            target_fr: (20.0, 25.0),
            coefficient_sets: default_coefficient_sets(),
        }
    }

    /// Schedule parameters implied by this configuration
    /// (`t_min = round(0.80 * t_max)`).
    pub fn schedule_config(&self) -> ScheduleConfig {
        let mut cfg = ScheduleConfig::for_protocol(self.schedule, self.t_max);
        cfg.target_fr_low = self.target_fr.0;
        cfg.target_fr_high = self.target_fr.1;
        cfg.sampling_budget_per_probe = self.probe_budget;
        cfg
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_runs == 0 || self.n_particles == 0 || self.t_max == 0 {
            return Err(Error::Config(
                "runs, particles, and steps must be positive".into(),
            ));
        }
        if self.coefficient_sets.is_empty() {
            return Err(Error::Config("at least one coefficient set required".into()));
        }
        if self.coefficient_sets.len() > self.n_particles {
            return Err(Error::Config(format!(
                "{} sub-neighbourhoods cannot cover {} particles",
                self.coefficient_sets.len(),
                self.n_particles
            )));
        }
        if self.links_per_particle == 0 {
            return Err(Error::Config("links per particle must be positive".into()));
        }
        if self.lhs_candidates == 0 {
            return Err(Error::Config("lhs candidates must be positive".into()));
        }
        let schedule_cfg = self.schedule_config();
        if self.schedule == ScheduleKind::PseudoAdaptive {
            schedule_cfg.validate(self.t_max)?;
        }
        if self.penalty_k.is_nan() || self.penalty_k <= 0.0 {
            return Err(Error::Config("penalty coefficient must be positive".into()));
        }
        Ok(())
    }
}

/// The three sub-neighbourhood coefficient sets of the benchmark protocol,
/// in block order.
pub fn default_coefficient_sets() -> Vec<CoefficientSet> {
    vec![
        rrr2_coefficients(2.40, 0.5).expect("protocol setting"),
        rrr1_coefficients(1.80, 0.5).expect("protocol setting"),
        classical_coefficients(0.7298, 2.9922 / 2.0, 2.9922 / 2.0).expect("protocol setting"),
    ]
}

/// Tracks the best visited point that is feasible at the final tolerances.
struct BestTracker {
    n_inequality: usize,
    best_conflict: f64,
    best_position: Option<Vec<f64>>,
}

impl BestTracker {
    fn new(problem: &Problem) -> Self {
        Self {
            n_inequality: problem.n_inequality(),
            best_conflict: f64::INFINITY,
            best_position: None,
        }
    }

    fn finally_feasible(&self, eval: &PointEvaluation) -> bool {
        eval.bound_violation == 0.0
            && eval.raw_constraints.iter().enumerate().all(|(j, &g)| {
                if j < self.n_inequality {
                    g <= 0.0
                } else {
                    g.abs() <= FINAL_TOL_EQ
                }
            })
    }

    fn offer(&mut self, position: &[f64], eval: &PointEvaluation) {
        if eval.conflict < self.best_conflict && self.finally_feasible(eval) {
            self.best_conflict = eval.conflict;
            self.best_position = Some(position.to_vec());
        }
    }
}

/// Executes one seeded run: self-tuning (unless the schedule is `None`),
/// best-of-N Latin Hypercube initialization with zero velocities and best
/// experiences at the initial positions, then `t_max - 1` synchronous steps.
/// The N initial evaluations stand in for the first step's would-be
/// re-evaluations, so `FE = n_particles * t_max` exactly.
pub fn run_single(config: &ExperimentConfig, problem: &Problem, run_index: usize) -> Result<RunResult> {
    let seed = config.base_seed.wrapping_add(run_index as u64);
    let mut counters = EvalCounters::default();
    let schedule_cfg = config.schedule_config();

    let (mut tol, self_tune) = match config.schedule {
        ScheduleKind::None => (ToleranceState::final_values(), None),
        _ => {
            let mut tune_rng = component_rng(seed, STREAM_SELF_TUNE);
            let outcome =
                self_tune_initial_tolerances(problem, &schedule_cfg, &mut tune_rng, &mut counters);
            (outcome.tolerances, Some(outcome))
        }
    };
    let initial_tol = tol;
    let mut scheduler = Scheduler::new(schedule_cfg);

    let mut init_rng = component_rng(seed, STREAM_INIT);
    let positions = latin_hypercube_init(
        config.n_particles,
        problem.bounds(),
        config.lhs_candidates,
        &mut init_rng,
    )?;

    let evaluator = PenalizedProblem::new(problem.clone(), PenaltyConfig::proposed(config.penalty_k));
    let topology = build_forward_topology(
        config.n_particles,
        config.coefficient_sets.len(),
        config.links_per_particle,
    )?;
    let mut rngs = particle_rngs(seed, config.n_particles);
    let mut tracker = BestTracker::new(problem);

    let (mut swarm, init_evals) =
        Swarm::from_positions(positions, &evaluator, &tol, &mut counters)?;
    for (p, e) in swarm.particles().iter().zip(&init_evals) {
        tracker.offer(&p.position, e);
    }

    let mut trace = Vec::with_capacity(config.t_max);
    let mut record_step = |swarm: &mut Swarm,
                           scheduler: &mut Scheduler,
                           tol: &mut ToleranceState,
                           t: usize| {
        let per = swarm.percent_feasible_pbests();
        let update = scheduler.step(tol, t, per);
        if update != UpdateKind::Unchanged {
            swarm.refresh_pbests(&evaluator, tol);
        }
        trace.push(TraceRecord {
            t,
            tol_ineq: tol.tol_ineq(),
            tol_eq: tol.tol_eq(),
            percent_feasible_pbests: per,
            best_feasible_conflict: swarm.best_feasible_pbest_conflict(),
            mean_pbest_conflict: swarm.mean_pbest_conflict(),
            update,
        });
    };

    record_step(&mut swarm, &mut scheduler, &mut tol, 1);
    for t in 2..=config.t_max {
        let evals = swarm.step(
            &topology,
            &config.coefficient_sets,
            &evaluator,
            &tol,
            &mut rngs,
            &mut counters,
        )?;
        for (p, e) in swarm.particles().iter().zip(&evals) {
            tracker.offer(&p.position, e);
        }
        record_step(&mut swarm, &mut scheduler, &mut tol, t);
    }

    let best_conflict = tracker.best_position.as_ref().map(|_| tracker.best_conflict);
    let success = best_conflict
        .map(|b| b - problem.known_optimum() <= SUCCESS_ERROR)
        .unwrap_or(false);
    Ok(RunResult {
        run_index,
        seed,
        best_conflict,
        best_position: tracker.best_position,
        success,
        counters,
        final_percent_feasible_pbests: swarm.percent_feasible_pbests(),
        initial_tol_ineq: initial_tol.tol_ineq(),
        initial_tol_eq: initial_tol.tol_eq(),
        self_tune,
        trace,
    })
}

/// A completed batch: statistics plus the per-run results behind them.
/// Failed runs abort individually and are reported, never silently dropped;
/// the remaining seeds still run.
#[derive(Debug)]
pub struct SuiteOutcome {
    pub stats: SuiteStatistics,
    pub results: Vec<RunResult>,
    pub failures: Vec<(usize, String)>,
}

/// Runs `n_runs` seeded runs (seed = base_seed + run index) in parallel and
/// aggregates them into summary statistics.
pub fn run_suite(config: &ExperimentConfig) -> Result<SuiteOutcome> {
    config.validate()?;
    let (problem, metadata) = get_problem(&config.problem)?;

    let runs: Vec<(usize, Result<RunResult>)> = (0..config.n_runs)
        .into_par_iter()
        .map(|i| (i, run_single(config, &problem, i)))
        .collect();

    let mut results = Vec::with_capacity(config.n_runs);
    let mut failures = Vec::new();
    for (i, outcome) in runs {
        match outcome {
            Ok(r) => results.push(r),
            Err(e) => failures.push((i, e.to_string())),
        }
    }
    results.sort_by_key(|r| r.run_index);

    let stats = aggregate(
        &config.problem,
        config.schedule,
        metadata.table_optimum,
        &results,
    );
    Ok(SuiteOutcome {
        stats,
        results,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_config(schedule: ScheduleKind) -> ExperimentConfig {
        let mut cfg = ExperimentConfig::protocol("g12", schedule);
        cfg.n_runs = 3;
        cfg.n_particles = 10;
        cfg.t_max = 120;
        cfg.lhs_candidates = 20;
        cfg.probe_budget = 200;
        cfg
    }

    #[test]
    fn fe_budget_is_exact_and_trace_covers_every_step() {
        let cfg = small_config(ScheduleKind::PseudoAdaptive);
        let outcome = run_suite(&cfg).unwrap();
        assert!(outcome.failures.is_empty());
        for r in &outcome.results {
            assert_eq!(r.counters.fe, (cfg.n_particles * cfg.t_max) as u64);
            let probes = r.self_tune.as_ref().unwrap().probes as u64;
            assert_eq!(r.counters.ce, r.counters.fe + probes * cfg.probe_budget as u64);
            assert_eq!(r.trace.len(), cfg.t_max);
            assert_eq!(r.trace.last().unwrap().t, cfg.t_max);
        }
    }

    #[test]
    fn none_schedule_runs_at_final_tolerances_with_equal_budgets() {
        let cfg = small_config(ScheduleKind::None);
        let outcome = run_suite(&cfg).unwrap();
        for r in &outcome.results {
            assert_eq!(r.counters.ce, r.counters.fe);
            assert_eq!(r.initial_tol_ineq, 0.0);
            assert_eq!(r.initial_tol_eq, FINAL_TOL_EQ);
            for rec in &r.trace {
                assert_eq!(rec.tol_ineq, 0.0);
                assert_eq!(rec.tol_eq, FINAL_TOL_EQ);
            }
        }
    }

    #[test]
    fn identical_seeds_reproduce_identical_results() {
        let cfg = small_config(ScheduleKind::Exponential);
        let a = run_suite(&cfg).unwrap();
        let b = run_suite(&cfg).unwrap();
        for (ra, rb) in a.results.iter().zip(&b.results) {
            assert_eq!(ra.best_conflict, rb.best_conflict);
            assert_eq!(ra.counters, rb.counters);
            let last_a = ra.trace.last().unwrap();
            let last_b = rb.trace.last().unwrap();
            assert_eq!(last_a.mean_pbest_conflict.to_bits(), last_b.mean_pbest_conflict.to_bits());
        }
    }

    #[test]
    fn best_found_is_judged_at_final_tolerances() {
        // tolerance-relaxed bests must never leak into best_conflict: the
        // reported best must itself satisfy the final tolerances
        let cfg = small_config(ScheduleKind::PseudoAdaptive);
        let (problem, _) = get_problem(&cfg.problem).unwrap();
        let outcome = run_suite(&cfg).unwrap();
        for r in &outcome.results {
            if let (Some(best), Some(pos)) = (r.best_conflict, r.best_position.as_ref()) {
                let raw = problem.raw_constraints(pos);
                let final_tol = ToleranceState::final_values();
                assert!(crate::constraint::is_feasible(&problem, &raw, pos, &final_tol));
                assert!((problem.conflict(pos) - best).abs() <= 1e-12 * best.abs().max(1.0));
            }
        }
    }

    #[test]
    fn toggling_schedules_preserves_initialization_randomness() {
        // initialization, self-tuning, and dynamics draw from separate
        // streams: the first step's mean best-experience conflict (raw
        // conflicts of the initial positions) must match across schedules
        let (problem, _) = get_problem("g12").unwrap();
        let mut results = Vec::new();
        for schedule in [ScheduleKind::None, ScheduleKind::PseudoAdaptive] {
            let mut cfg = small_config(schedule);
            cfg.t_max = 5;
            let r = run_single(&cfg, &problem, 0).unwrap();
            results.push(r.trace[0].mean_pbest_conflict);
        }
        assert_eq!(results[0].to_bits(), results[1].to_bits());
    }

    #[test]
    fn invalid_configs_are_rejected() {
        let mut cfg = small_config(ScheduleKind::None);
        cfg.n_particles = 2; // fewer particles than sub-neighbourhoods
        assert!(cfg.validate().is_err());
        let mut cfg = small_config(ScheduleKind::None);
        cfg.n_runs = 0;
        assert!(cfg.validate().is_err());
        let mut cfg = small_config(ScheduleKind::PseudoAdaptive);
        cfg.target_fr = (25.0, 20.0);
        assert!(cfg.validate().is_err());
    }
}
