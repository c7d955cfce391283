//! Constrained particle swarm optimization with pseudo-adaptive tolerance
//! relaxation, plus a reproducible benchmark harness for the g01-g13 suite.
//!
//! Constraint handling is penalization with constant coefficients: only
//! violations beyond the current tolerances are penalized, and the
//! tolerances themselves start from a self-tuned relaxation (targeting a
//! feasibility-ratio window) and shrink over the run, either exponentially
//! or driven by the fraction of feasible best experiences.
//!
//! Modules:
//! * [`swarm`] - particle dynamics under three coefficient formulations and
//!   a forward ring topology with sub-neighbourhoods,
//! * [`constraint`] - problems, tolerances, violations, penalized conflicts,
//! * [`schedule`] - self-tuning and the tolerance-decrease schedules,
//! * [`suite`] - the 13 benchmark problems, feasibility-ratio estimation,
//!   and Latin Hypercube initialization,
//! * [`harness`] - the experiment loop, statistics, and report files.

pub mod constraint;
pub mod error;
pub mod harness;
pub mod rng;
pub mod schedule;
pub mod suite;
pub mod swarm;

pub use constraint::{
    ConflictEvaluator, EvalCounters, PenalizedProblem, PenaltyConfig, PointEvaluation, Problem,
    ToleranceState, DEFAULT_PENALTY_K, FINAL_TOL_EQ, INEQ_ZERO_FLOOR,
};
pub use error::{Error, Result};
pub use harness::{
    aggregate, run_single, run_suite, ExperimentConfig, RunResult, SuiteOutcome, SuiteStatistics,
    TraceRecord, SUCCESS_ERROR,
};
pub use schedule::{
    apply_tolerance_update, endgame_coefficient, pseudo_adaptive_coefficient,
    safety_update_due, self_tune_initial_tolerances, ScheduleConfig, ScheduleKind, Scheduler,
    SelfTuneOutcome, UpdateKind,
};
pub use suite::{
    estimate_feasibility_ratio, get_problem, latin_hypercube_init, BenchmarkMetadata,
    FrReference, PROBLEM_NAMES,
};
pub use swarm::{
    build_forward_topology, classical_coefficients, position_update, rrr1_coefficients,
    rrr2_coefficients, velocity_update, CoefficientSet, Formulation, Particle, Swarm, Topology,
};
