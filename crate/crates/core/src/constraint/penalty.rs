//! Tolerance-aware constraint violations and penalized conflict values.
//!
//! Two penalization schemes are provided: the classical additive scheme with
//! per-constraint constants, and the constant-coefficient scheme where each
//! violation beyond the current tolerance is penalized with `k * v^alpha`,
//! `alpha` switching from 1 to 2 once the violation reaches 1.

use super::problem::Problem;
use super::tolerance::ToleranceState;
use crate::error::{Error, Result};

/// Constant penalty coefficient used throughout the benchmark protocol.
pub const DEFAULT_PENALTY_K: f64 = 1e6;

/// Saturation value substituted when a penalized conflict overflows. Keeps
/// conflicts totally ordered; `k = 1e6` with squared violations can overflow
/// on wild early positions.
pub const PENALTY_SENTINEL: f64 = 1e300;

/// Penalization scheme selector.
#[derive(Debug, Clone)]
pub enum PenaltyConfig {
    /// `f + sum_j k_j * v_j^alpha_j` with per-constraint constants and
    /// zero-tolerance violations.
    StaticAdditive { k: Vec<f64>, alpha: Vec<f64> },
    /// `f + k * sum_j v_j^alpha(v_j)` over tolerance-adjusted violations,
    /// `alpha(v) = 2` when `v >= alpha_threshold`, else `1`.
    ProposedConstant { k: f64, alpha_threshold: f64 },
}

impl PenaltyConfig {
    /// The benchmark-protocol configuration: `k = 1e6`, threshold 1.
    pub fn proposed(k: f64) -> Self {
        PenaltyConfig::ProposedConstant {
            k,
            alpha_threshold: 1.0,
        }
    }
}

impl Default for PenaltyConfig {
    fn default() -> Self {
        Self::proposed(DEFAULT_PENALTY_K)
    }
}

/// Evaluation-budget counters, owned by the caller of each run.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct EvalCounters {
    /// Objective (conflict) function evaluations.
    pub fe: u64,
    /// Constraint-set evaluations (one per point, regardless of m).
    pub ce: u64,
    /// Penalized conflicts saturated to `PENALTY_SENTINEL`.
    pub saturations: u64,
}

/// Raw constraint values and tolerance-adjusted violations at one point.
#[derive(Debug, Clone)]
pub struct ConstraintSample {
    /// Raw `g_j(x)` values, inequalities first (length `m`), cached so
    /// penalties can be recomputed after tolerance changes at zero CE cost.
    pub raw: Vec<f64>,
    /// `max(0, g_j - tol_ineq)` / `max(0, |g_j| - tol_eq)` per constraint.
    pub violations: Vec<f64>,
    /// Aggregate out-of-bounds term, an extra zero-tolerance inequality.
    pub bound_violation: f64,
}

impl ConstraintSample {
    /// True when every adjusted violation and the bound term are zero.
    pub fn is_feasible(&self) -> bool {
        self.bound_violation == 0.0 && self.violations.iter().all(|&v| v == 0.0)
    }
}

/// Tolerance-adjusted violations from cached raw constraint values.
/// `raw[..n_inequality]` are inequality constraints, the rest equalities.
pub fn adjusted_violations(raw: &[f64], n_inequality: usize, tol: &ToleranceState) -> Vec<f64> {
    raw.iter()
        .enumerate()
        .map(|(j, &g)| {
            if j < n_inequality {
                (g - tol.tol_ineq()).max(0.0)
            } else {
                (g.abs() - tol.tol_eq()).max(0.0)
            }
        })
        .collect()
}

/// Evaluates the constraint set at `x` and returns raw values, adjusted
/// violations, and the bound-violation term. Counts exactly one CE.
pub fn violation_vector(
    problem: &Problem,
    x: &[f64],
    tol: &ToleranceState,
    counters: &mut EvalCounters,
) -> Result<ConstraintSample> {
    problem.check_dimension(x)?;
    let raw = problem.raw_constraints(x);
    counters.ce += 1;
    if let Some(j) = raw.iter().position(|g| !g.is_finite()) {
        return Err(Error::NonFiniteConstraint {
            index: j,
            position: x.to_vec(),
        });
    }
    let violations = adjusted_violations(&raw, problem.n_inequality(), tol);
    Ok(ConstraintSample {
        raw,
        violations,
        bound_violation: problem.bound_violation(x),
    })
}

/// Feasibility from cached raw constraint values (no new CE).
pub fn is_feasible(problem: &Problem, raw: &[f64], x: &[f64], tol: &ToleranceState) -> bool {
    problem.bound_violation(x) == 0.0
        && adjusted_violations(raw, problem.n_inequality(), tol)
            .iter()
            .all(|&v| v == 0.0)
}

fn saturate(value: f64, saturated: &mut bool) -> f64 {
    if value.is_finite() {
        value
    } else {
        *saturated = true;
        PENALTY_SENTINEL
    }
}

/// Constant-coefficient penalized conflict over tolerance-adjusted violations
/// (bound term included by the caller). Returns the value and whether it was
/// saturated. When every violation is zero the conflict is returned bit-exactly.
pub fn penalized_conflict_proposed(
    f_value: f64,
    violations: &[f64],
    cfg: &PenaltyConfig,
) -> (f64, bool) {
    let (k, threshold) = match cfg {
        PenaltyConfig::ProposedConstant { k, alpha_threshold } => (*k, *alpha_threshold),
        PenaltyConfig::StaticAdditive { .. } => {
            panic!("penalized_conflict_proposed requires PenaltyConfig::ProposedConstant")
        }
    };
    if violations.iter().all(|&v| v == 0.0) {
        let mut saturated = false;
        let fp = saturate(f_value, &mut saturated);
        return (fp, saturated);
    }
    let sum: f64 = violations
        .iter()
        .map(|&v| if v >= threshold { v * v } else { v })
        .sum();
    let mut saturated = false;
    let fp = saturate(f_value + k * sum, &mut saturated);
    (fp, saturated)
}

/// Classical additive penalized conflict, `f + sum_j k_j * v_j^alpha_j`.
/// Violations must be computed with zero tolerances.
pub fn penalized_conflict_static(
    f_value: f64,
    violations: &[f64],
    cfg: &PenaltyConfig,
) -> Result<(f64, bool)> {
    let (ks, alphas) = match cfg {
        PenaltyConfig::StaticAdditive { k, alpha } => (k, alpha),
        PenaltyConfig::ProposedConstant { .. } => {
            panic!("penalized_conflict_static requires PenaltyConfig::StaticAdditive")
        }
    };
    if ks.len() != violations.len() || alphas.len() != violations.len() {
        return Err(Error::PenaltyLength {
            expected: violations.len(),
            got: ks.len().min(alphas.len()),
        });
    }
    if violations.iter().all(|&v| v == 0.0) {
        let mut saturated = false;
        let fp = saturate(f_value, &mut saturated);
        return Ok((fp, saturated));
    }
    let sum: f64 = violations
        .iter()
        .zip(ks.iter().zip(alphas))
        .map(|(&v, (&k, &a))| k * v.powf(a))
        .sum();
    let mut saturated = false;
    let fp = saturate(f_value + sum, &mut saturated);
    Ok((fp, saturated))
}

/// One fully evaluated position: conflict, constraint caches, penalized value.
#[derive(Debug, Clone)]
pub struct PointEvaluation {
    pub conflict: f64,
    pub raw_constraints: Vec<f64>,
    pub bound_violation: f64,
    pub penalized: f64,
    pub feasible: bool,
}

/// Supplies penalized conflicts to the swarm. Implementations must be pure
/// apart from the counters owned by the caller.
pub trait ConflictEvaluator {
    /// Full evaluation at a new position: one FE and one CE.
    fn evaluate(
        &self,
        x: &[f64],
        tol: &ToleranceState,
        counters: &mut EvalCounters,
    ) -> Result<PointEvaluation>;

    /// Recomputes (penalized, feasible) from cached values under new
    /// tolerances. Costs no FE/CE.
    fn repenalize(
        &self,
        conflict: f64,
        raw_constraints: &[f64],
        bound_violation: f64,
        tol: &ToleranceState,
    ) -> (f64, bool);
}

/// The standard evaluator: a problem plus a penalization scheme.
#[derive(Debug, Clone)]
pub struct PenalizedProblem {
    problem: Problem,
    penalty: PenaltyConfig,
}

impl PenalizedProblem {
    pub fn new(problem: Problem, penalty: PenaltyConfig) -> Self {
        Self { problem, penalty }
    }

    pub fn problem(&self) -> &Problem {
        &self.problem
    }

    fn assemble(&self, violations: &[f64], bound_violation: f64) -> Vec<f64> {
        let mut full = Vec::with_capacity(violations.len() + 1);
        full.extend_from_slice(violations);
        full.push(bound_violation);
        full
    }
}

impl ConflictEvaluator for PenalizedProblem {
    fn evaluate(
        &self,
        x: &[f64],
        tol: &ToleranceState,
        counters: &mut EvalCounters,
    ) -> Result<PointEvaluation> {
        let sample = violation_vector(&self.problem, x, tol, counters)?;
        let conflict = self.problem.conflict(x);
        counters.fe += 1;
        let full = self.assemble(&sample.violations, sample.bound_violation);
        let (penalized, saturated) = penalized_conflict_proposed(conflict, &full, &self.penalty);
        if saturated {
            counters.saturations += 1;
        }
        let feasible = sample.is_feasible();
        Ok(PointEvaluation {
            conflict,
            raw_constraints: sample.raw,
            bound_violation: sample.bound_violation,
            penalized,
            feasible,
        })
    }

    fn repenalize(
        &self,
        conflict: f64,
        raw_constraints: &[f64],
        bound_violation: f64,
        tol: &ToleranceState,
    ) -> (f64, bool) {
        let violations = adjusted_violations(raw_constraints, self.problem.n_inequality(), tol);
        let full = self.assemble(&violations, bound_violation);
        let (penalized, _) = penalized_conflict_proposed(conflict, &full, &self.penalty);
        let feasible = bound_violation == 0.0 && violations.iter().all(|&v| v == 0.0);
        (penalized, feasible)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constraint::tolerance::FINAL_TOL_EQ;

    fn problem_1ineq() -> Problem {
        Problem::new("p", vec![(-10.0, 10.0)], |x| x[0]).unwrap().inequality(|x| x[0])
    }

    #[test]
    fn violation_arithmetic_matches_hand_evaluation() {
        // q = 1, g_1(x) = 3.0, tol_ineq = 1.0 -> component = 2.0
        let p = Problem::new("p", vec![(-10.0, 10.0)], |_| 0.0)
            .unwrap()
            .inequality(|_| 3.0);
        let tol = ToleranceState::relaxed(1.0, FINAL_TOL_EQ);
        let mut c = EvalCounters::default();
        let s = violation_vector(&p, &[0.0], &tol, &mut c).unwrap();
        assert_eq!(s.violations, vec![2.0]);
        assert_eq!(c.ce, 1);
        assert_eq!(c.fe, 0);
    }

    #[test]
    fn equality_violation_uses_absolute_value() {
        // r = 1, g(x) = -0.3, tol_eq = 0.26 -> 0.04
        let p = Problem::new("p", vec![(-10.0, 10.0)], |_| 0.0)
            .unwrap()
            .equality(|_| -0.3);
        let tol = ToleranceState::relaxed(0.0, 0.26);
        let mut c = EvalCounters::default();
        let s = violation_vector(&p, &[0.0], &tol, &mut c).unwrap();
        assert!((s.violations[0] - 0.04).abs() < 1e-12);
    }

    #[test]
    fn feasible_point_has_zero_vector() {
        let p = problem_1ineq();
        let tol = ToleranceState::final_values();
        let mut c = EvalCounters::default();
        let s = violation_vector(&p, &[-1.0], &tol, &mut c).unwrap();
        assert!(s.is_feasible());
        assert_eq!(s.violations, vec![0.0]);
        assert_eq!(s.bound_violation, 0.0);
    }

    #[test]
    fn boundary_point_is_feasible() {
        let p = problem_1ineq();
        assert_eq!(p.bound_violation(&[10.0]), 0.0);
        let tol = ToleranceState::final_values();
        assert!(is_feasible(&p, &[0.0], &[10.0], &tol));
    }

    #[test]
    fn equality_at_exact_tolerance_is_feasible() {
        // closed inequality: |g| = 1e-4 with tol_eq = 1e-4 is feasible
        let raw = [1e-4];
        let tol = ToleranceState::final_values();
        let v = adjusted_violations(&raw, 0, &tol);
        assert_eq!(v, vec![0.0]);
    }

    #[test]
    fn non_finite_constraint_reports_index() {
        let p = Problem::new("p", vec![(-10.0, 10.0)], |_| 0.0)
            .unwrap()
            .inequality(|_| 0.0)
            .inequality(|_| f64::NAN);
        let tol = ToleranceState::final_values();
        let mut c = EvalCounters::default();
        let err = violation_vector(&p, &[0.0], &tol, &mut c).unwrap_err();
        assert!(matches!(err, Error::NonFiniteConstraint { index: 1, .. }));
    }

    #[test]
    fn proposed_scheme_matches_hand_values() {
        let cfg = PenaltyConfig::default();
        // identity on a feasible point, bit-exact
        let (fp, sat) = penalized_conflict_proposed(7.5, &[0.0, 0.0], &cfg);
        assert_eq!(fp.to_bits(), 7.5f64.to_bits());
        assert!(!sat);
        // v = 2 >= 1: alpha = 2 -> 1e6 * 4
        let (fp, _) = penalized_conflict_proposed(0.0, &[2.0], &cfg);
        assert_eq!(fp, 4.0e6);
        // v = 0.5 < 1: alpha = 1 -> 1e6 * 0.5
        let (fp, _) = penalized_conflict_proposed(0.0, &[0.5], &cfg);
        assert_eq!(fp, 5.0e5);
    }

    #[test]
    fn static_scheme_matches_hand_values() {
        let cfg = PenaltyConfig::StaticAdditive {
            k: vec![1e6, 1e6],
            alpha: vec![2.0, 2.0],
        };
        let (fp, _) = penalized_conflict_static(1.0, &[1.0, 1.0], &cfg).unwrap();
        assert_eq!(fp, 1.0 + 2.0e6);
        let (fp, _) = penalized_conflict_static(1.0, &[0.0, 0.0], &cfg).unwrap();
        assert_eq!(fp, 1.0);
    }

    #[test]
    fn static_length_mismatch_is_rejected() {
        let cfg = PenaltyConfig::StaticAdditive {
            k: vec![1e6],
            alpha: vec![2.0],
        };
        assert!(matches!(
            penalized_conflict_static(0.0, &[1.0, 1.0], &cfg),
            Err(Error::PenaltyLength { .. })
        ));
    }

    #[test]
    fn schemes_coincide_for_squared_terms() {
        // zero tolerances, all v >= 1, k_j = k, alpha_j = 2
        let st = PenaltyConfig::StaticAdditive {
            k: vec![1e6; 3],
            alpha: vec![2.0; 3],
        };
        let pr = PenaltyConfig::default();
        let v = [1.5, 3.0, 1.0];
        let (a, _) = penalized_conflict_static(2.0, &v, &st).unwrap();
        let (b, _) = penalized_conflict_proposed(2.0, &v, &pr);
        assert_eq!(a, b);
    }

    #[test]
    fn overflow_saturates_and_flags() {
        let cfg = PenaltyConfig::default();
        let (fp, sat) = penalized_conflict_proposed(0.0, &[1e200], &cfg);
        assert_eq!(fp, PENALTY_SENTINEL);
        assert!(sat);
    }

    #[test]
    fn repenalize_matches_fresh_evaluation_without_ces() {
        let p = Problem::new("p", vec![(-5.0, 5.0), (-5.0, 5.0)], |x| x[0] * x[1])
            .unwrap()
            .inequality(|x| x[0] - 1.0)
            .equality(|x| x[1] - 0.5);
        let ev = PenalizedProblem::new(p, PenaltyConfig::default());
        let loose = ToleranceState::relaxed(2.0, 1.0);
        let tight = ToleranceState::final_values();
        let x = [3.0, 2.0];

        let mut c = EvalCounters::default();
        let first = ev.evaluate(&x, &loose, &mut c).unwrap();
        let ce_after_eval = c.ce;

        let (rp, rf) = ev.repenalize(
            first.conflict,
            &first.raw_constraints,
            first.bound_violation,
            &tight,
        );
        let fresh = ev.evaluate(&x, &tight, &mut c).unwrap();
        assert_eq!(rp.to_bits(), fresh.penalized.to_bits());
        assert_eq!(rf, fresh.feasible);
        assert_eq!(ce_after_eval, 1);
    }
}
