//! Particle dynamics: velocity/position updates and the synchronous step.

pub mod coefficients;
pub mod topology;

use rand::Rng;

use crate::constraint::{ConflictEvaluator, EvalCounters, PointEvaluation, ToleranceState};
use crate::error::{Error, Result};

pub use coefficients::{
    classical_coefficients, rrr1_coefficients, rrr2_coefficients, CoefficientSet, Formulation,
};
pub use topology::{build_forward_topology, Topology};

/// One particle: current state plus its best experience with cached raw
/// constraint values, so the penalized best can be recomputed after any
/// tolerance change without new function evaluations.
#[derive(Debug, Clone)]
pub struct Particle {
    pub position: Vec<f64>,
    pub velocity: Vec<f64>,
    pub pbest_position: Vec<f64>,
    /// Raw conflict at the best experience.
    pub pbest_conflict: f64,
    /// Cached raw `g_j` values at the best experience.
    pub pbest_raw_constraints: Vec<f64>,
    /// Cached aggregate bound violation at the best experience.
    pub pbest_bound_violation: f64,
    /// Penalized conflict of the best experience under current tolerances.
    pub pbest_penalized: f64,
    /// Feasibility of the best experience under current tolerances.
    pub pbest_feasible: bool,
}

impl Particle {
    fn from_evaluation(position: Vec<f64>, eval: &PointEvaluation) -> Self {
        let dim = position.len();
        Self {
            pbest_position: position.clone(),
            position,
            velocity: vec![0.0; dim],
            pbest_conflict: eval.conflict,
            pbest_raw_constraints: eval.raw_constraints.clone(),
            pbest_bound_violation: eval.bound_violation,
            pbest_penalized: eval.penalized,
            pbest_feasible: eval.feasible,
        }
    }

    fn adopt_pbest(&mut self, eval: &PointEvaluation) {
        self.pbest_position.clone_from(&self.position);
        self.pbest_conflict = eval.conflict;
        self.pbest_raw_constraints.clone_from(&eval.raw_constraints);
        self.pbest_bound_violation = eval.bound_violation;
        self.pbest_penalized = eval.penalized;
        self.pbest_feasible = eval.feasible;
    }
}

/// New velocity for one particle. One independent uniform is drawn per
/// coordinate per attraction term, individuality before sociality.
pub fn velocity_update<R: Rng + ?Sized>(
    particle: &Particle,
    lbest_position: &[f64],
    coeffs: &CoefficientSet,
    rng: &mut R,
) -> Vec<f64> {
    debug_assert_eq!(particle.position.len(), lbest_position.len());
    let w = coeffs.w();
    (0..particle.position.len())
        .map(|j| {
            let (phi_i, phi_s) = coeffs.draw_attractions(rng);
            w * particle.velocity[j]
                + phi_i * (particle.pbest_position[j] - particle.position[j])
                + phi_s * (lbest_position[j] - particle.position[j])
        })
        .collect()
}

/// Elementwise position update. Positions are not clamped to bounds; bound
/// violations are handled downstream as constraints.
pub fn position_update(x: &[f64], v: &[f64]) -> Vec<f64> {
    debug_assert_eq!(x.len(), v.len());
    x.iter().zip(v).map(|(a, b)| a + b).collect()
}

/// The swarm: particles plus synchronous best-experience bookkeeping.
#[derive(Debug, Clone)]
pub struct Swarm {
    particles: Vec<Particle>,
}

impl Swarm {
    /// Initializes particles at the given positions with zero velocities and
    /// best experiences equal to the initial positions. Every position is
    /// evaluated once (N FEs, N CEs). Returns the evaluations so the caller
    /// can feed its best-found tracking.
    pub fn from_positions<E: ConflictEvaluator>(
        positions: Vec<Vec<f64>>,
        evaluator: &E,
        tol: &ToleranceState,
        counters: &mut EvalCounters,
    ) -> Result<(Self, Vec<PointEvaluation>)> {
        if positions.is_empty() {
            return Err(Error::InvalidTopology("at least one particle"));
        }
        let mut particles = Vec::with_capacity(positions.len());
        let mut evals = Vec::with_capacity(positions.len());
        for (i, position) in positions.into_iter().enumerate() {
            let eval = evaluator
                .evaluate(&position, tol, counters)
                .map_err(|e| Error::Particle {
                    particle: i,
                    source: Box::new(e),
                })?;
            particles.push(Particle::from_evaluation(position, &eval));
            evals.push(eval);
        }
        Ok((Self { particles }, evals))
    }

    pub fn len(&self) -> usize {
        self.particles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.particles.is_empty()
    }

    pub fn particles(&self) -> &[Particle] {
        &self.particles
    }

    /// One synchronous time-step:
    /// 1. local bests are resolved from the previous step's best experiences,
    /// 2. every particle moves using those frozen attractors,
    /// 3. every new position is evaluated (one FE + one CE each),
    /// 4. a best experience is replaced only by a strictly lower penalized
    ///    conflict.
    ///
    /// `rngs` holds one independent stream per particle, so the outcome does
    /// not depend on the processing order.
    pub fn step<E: ConflictEvaluator, R: Rng>(
        &mut self,
        topology: &Topology,
        coefficient_sets: &[CoefficientSet],
        evaluator: &E,
        tol: &ToleranceState,
        rngs: &mut [R],
        counters: &mut EvalCounters,
    ) -> Result<Vec<PointEvaluation>> {
        let n = self.particles.len();
        assert_eq!(topology.n_particles(), n, "topology size mismatch");
        assert_eq!(rngs.len(), n, "one rng stream per particle required");
        assert!(
            coefficient_sets.len() >= topology.n_subgroups(),
            "missing coefficient sets"
        );

        let penalized: Vec<f64> = self.particles.iter().map(|p| p.pbest_penalized).collect();
        let lbest_positions: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                let j = topology.lbest_index(i, &penalized);
                self.particles[j].pbest_position.clone()
            })
            .collect();

        for i in 0..n {
            let coeffs = &coefficient_sets[topology.subgroup_of(i)];
            let p = &mut self.particles[i];
            let v = velocity_update(p, &lbest_positions[i], coeffs, &mut rngs[i]);
            p.position = position_update(&p.position, &v);
            p.velocity = v;
        }

        let mut evals = Vec::with_capacity(n);
        for (i, p) in self.particles.iter_mut().enumerate() {
            let eval = evaluator
                .evaluate(&p.position, tol, counters)
                .map_err(|e| Error::Particle {
                    particle: i,
                    source: Box::new(e),
                })?;
            if eval.penalized < p.pbest_penalized {
                p.adopt_pbest(&eval);
            }
            evals.push(eval);
        }
        Ok(evals)
    }

    /// Percentage of particles whose best experience is feasible under the
    /// tolerances last applied to them.
    pub fn percent_feasible_pbests(&self) -> f64 {
        let feasible = self.particles.iter().filter(|p| p.pbest_feasible).count();
        100.0 * feasible as f64 / self.particles.len() as f64
    }

    /// Recomputes every best experience's penalized conflict and feasibility
    /// from its cached raw constraint values. Costs no FEs/CEs; called after
    /// each tolerance update.
    pub fn refresh_pbests<E: ConflictEvaluator>(&mut self, evaluator: &E, tol: &ToleranceState) {
        for p in &mut self.particles {
            let (penalized, feasible) = evaluator.repenalize(
                p.pbest_conflict,
                &p.pbest_raw_constraints,
                p.pbest_bound_violation,
                tol,
            );
            p.pbest_penalized = penalized;
            p.pbest_feasible = feasible;
        }
    }

    /// Lowest raw conflict among currently feasible best experiences; NaN if
    /// none are feasible. This is the tolerance-relative best reported in
    /// traces, which may rise as tolerances shrink.
    pub fn best_feasible_pbest_conflict(&self) -> f64 {
        self.particles
            .iter()
            .filter(|p| p.pbest_feasible)
            .map(|p| p.pbest_conflict)
            .fold(f64::NAN, |acc, v| if acc.is_nan() || v < acc { v } else { acc })
    }

    /// Mean raw conflict of all best experiences.
    pub fn mean_pbest_conflict(&self) -> f64 {
        self.particles.iter().map(|p| p.pbest_conflict).sum::<f64>() / self.particles.len() as f64
    }
}
