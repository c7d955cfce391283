//! Problem representation, tolerance-aware violations, and penalization.

pub mod penalty;
pub mod problem;
pub mod tolerance;

pub use penalty::{
    adjusted_violations, is_feasible, penalized_conflict_proposed, penalized_conflict_static,
    violation_vector, ConflictEvaluator, ConstraintSample, EvalCounters, PenalizedProblem,
    PenaltyConfig, PointEvaluation, DEFAULT_PENALTY_K, PENALTY_SENTINEL,
};
pub use problem::{Problem, ScalarFn};
pub use tolerance::{ToleranceState, FINAL_TOL_EQ, INEQ_ZERO_FLOOR};
