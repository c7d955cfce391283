//! Monte-Carlo feasibility-ratio estimation and Latin Hypercube swarm
//! initialization.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::constraint::{adjusted_violations, EvalCounters, Problem, ToleranceState};
use crate::error::{Error, Result};

/// Fraction (as a percentage) of uniform samples in the bound box that are
/// feasible under `tol`. Counts one CE per sample when `counters` is given
/// (self-tuning probes); pass `None` for offline estimation.
///
/// Samples are drawn inside the box, so only the constraint functions decide
/// feasibility; a sample whose constraint value is non-finite counts as
/// infeasible rather than aborting the estimate.
pub fn estimate_feasibility_ratio<R: Rng + ?Sized>(
    problem: &Problem,
    tol: &ToleranceState,
    n_samples: usize,
    rng: &mut R,
    mut counters: Option<&mut EvalCounters>,
) -> f64 {
    assert!(n_samples >= 1, "at least one sample required");
    let mut x = vec![0.0; problem.dimension()];
    let mut raw = Vec::with_capacity(problem.n_constraints());
    let mut feasible = 0usize;
    for _ in 0..n_samples {
        for (xi, &(lo, hi)) in x.iter_mut().zip(problem.bounds()) {
            *xi = rng.random_range(lo..hi);
        }
        problem.raw_constraints_into(&x, &mut raw);
        if let Some(c) = counters.as_deref_mut() {
            c.ce += 1;
        }
        let ok = raw.iter().all(|g| g.is_finite())
            && adjusted_violations(&raw, problem.n_inequality(), tol)
                .iter()
                .all(|&v| v == 0.0);
        if ok {
            feasible += 1;
        }
    }
    100.0 * feasible as f64 / n_samples as f64
}

/// Best-of-`n_candidates` Latin Hypercube design of `n_particles` points.
///
/// Each candidate partitions every dimension into `n_particles` equal strata,
/// places one point per stratum (uniform jitter inside it), and pairs strata
/// across dimensions with independent random permutations. The candidate
/// maximizing the minimum pairwise Euclidean distance in the box-normalized
/// space wins; ties keep the earliest candidate. Consumes no FEs/CEs.
pub fn latin_hypercube_init<R: Rng + ?Sized>(
    n_particles: usize,
    bounds: &[(f64, f64)],
    n_candidates: usize,
    rng: &mut R,
) -> Result<Vec<Vec<f64>>> {
    if n_particles == 0 || n_candidates == 0 {
        return Err(Error::Config(
            "latin hypercube needs at least one point and one candidate".into(),
        ));
    }
    if bounds.is_empty() {
        return Err(Error::DegenerateBounds {
            index: 0,
            lower: 0.0,
            upper: 0.0,
        });
    }
    for (i, &(lo, hi)) in bounds.iter().enumerate() {
        if lo.is_nan() || hi.is_nan() || lo >= hi {
            return Err(Error::DegenerateBounds {
                index: i,
                lower: lo,
                upper: hi,
            });
        }
    }

    let dim = bounds.len();
    let n = n_particles;
    let mut strata: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<Vec<f64>>> = None;
    let mut best_min_dist = f64::NEG_INFINITY;

    for _ in 0..n_candidates {
        // generate in [0,1)^dim
        let mut design = vec![vec![0.0f64; dim]; n];
        for d in 0..dim {
            strata.shuffle(rng);
            for (i, point) in design.iter_mut().enumerate() {
                let jitter: f64 = rng.random();
                point[d] = (strata[i] as f64 + jitter) / n as f64;
            }
        }
        let min_dist = min_pairwise_distance(&design);
        if min_dist > best_min_dist {
            best_min_dist = min_dist;
            best = Some(design);
        }
    }

    let unit = best.expect("n_candidates >= 1");
    Ok(unit
        .into_iter()
        .map(|point| {
            point
                .iter()
                .zip(bounds)
                .map(|(&u, &(lo, hi))| lo + u * (hi - lo))
                .collect()
        })
        .collect())
}

/// Minimum pairwise Euclidean distance; +inf for fewer than two points.
pub fn min_pairwise_distance(points: &[Vec<f64>]) -> f64 {
    let mut min = f64::INFINITY;
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            let d2: f64 = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum();
            if d2 < min {
                min = d2;
            }
        }
    }
    min.sqrt()
}
