//! Constrained problem representation.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A scalar function of a real vector (objective or constraint).
pub type ScalarFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// A box-bounded minimization problem with inequality constraints
/// (`g(x) <= 0`) and equality constraints (`h(x) = 0`).
///
/// Bound violations are not handled by clamping; they are folded into the
/// constraint machinery as one aggregate zero-tolerance term, so positions
/// outside the box are merely infeasible, never rejected.
#[derive(Clone)]
pub struct Problem {
    name: String,
    bounds: Vec<(f64, f64)>,
    objective: ScalarFn,
    inequality: Vec<ScalarFn>,
    equality: Vec<ScalarFn>,
    known_optimum: f64,
    reference_optimum: Option<Vec<f64>>,
}

impl fmt::Debug for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Problem")
            .field("name", &self.name)
            .field("dimension", &self.dimension())
            .field("n_inequality", &self.inequality.len())
            .field("n_equality", &self.equality.len())
            .field("known_optimum", &self.known_optimum)
            .finish()
    }
}

impl Problem {
    /// Creates a problem from its bounds and objective. Bounds must satisfy
    /// `lower < upper` in every coordinate.
    pub fn new(
        name: impl Into<String>,
        bounds: Vec<(f64, f64)>,
        objective: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        for (i, &(lo, hi)) in bounds.iter().enumerate() {
            if lo.is_nan() || hi.is_nan() || lo >= hi {
                return Err(Error::DegenerateBounds {
                    index: i,
                    lower: lo,
                    upper: hi,
                });
            }
        }
        Ok(Self {
            name: name.into(),
            bounds,
            objective: Arc::new(objective),
            inequality: Vec::new(),
            equality: Vec::new(),
            known_optimum: f64::NAN,
            reference_optimum: None,
        })
    }

    /// Adds an inequality constraint `g(x) <= 0`.
    pub fn inequality(mut self, g: impl Fn(&[f64]) -> f64 + Send + Sync + 'static) -> Self {
        self.inequality.push(Arc::new(g));
        self
    }

    /// Adds an equality constraint `h(x) = 0`, satisfied when `|h| <= tol_eq`.
    pub fn equality(mut self, h: impl Fn(&[f64]) -> f64 + Send + Sync + 'static) -> Self {
        self.equality.push(Arc::new(h));
        self
    }

    /// Records the best known conflict value and, optionally, a reference
    /// point achieving it (used only for validation, never by the optimizer).
    pub fn optimum(mut self, value: f64, point: Option<Vec<f64>>) -> Self {
        self.known_optimum = value;
        self.reference_optimum = point;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dimension(&self) -> usize {
        self.bounds.len()
    }

    pub fn bounds(&self) -> &[(f64, f64)] {
        &self.bounds
    }

    pub fn n_inequality(&self) -> usize {
        self.inequality.len()
    }

    pub fn n_equality(&self) -> usize {
        self.equality.len()
    }

    /// Total number of constraints `m = q + r` (bounds excluded).
    pub fn n_constraints(&self) -> usize {
        self.inequality.len() + self.equality.len()
    }

    pub fn known_optimum(&self) -> f64 {
        self.known_optimum
    }

    pub fn reference_optimum(&self) -> Option<&[f64]> {
        self.reference_optimum.as_deref()
    }

    /// Evaluates the conflict (objective) function. The caller owns FE counting.
    pub fn conflict(&self, x: &[f64]) -> f64 {
        (self.objective)(x)
    }

    /// Evaluates all constraint functions at `x`, inequalities first, and
    /// writes the raw values into `out`. The caller owns CE counting.
    pub fn raw_constraints_into(&self, x: &[f64], out: &mut Vec<f64>) {
        out.clear();
        out.extend(self.inequality.iter().map(|g| g(x)));
        out.extend(self.equality.iter().map(|h| h(x)));
    }

    /// Evaluates all constraint functions at `x`, inequalities first.
    pub fn raw_constraints(&self, x: &[f64]) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.n_constraints());
        self.raw_constraints_into(x, &mut out);
        out
    }

    /// Aggregate bound violation: sum over coordinates of
    /// `max(0, x_i - u_i) + max(0, -x_i + l_i)`. Zero on the boundary.
    pub fn bound_violation(&self, x: &[f64]) -> f64 {
        self.bounds
            .iter()
            .zip(x)
            .map(|(&(lo, hi), &xi)| (xi - hi).max(0.0) + (-xi + lo).max(0.0))
            .sum()
    }

    /// Checks that `x` has the problem's dimension.
    pub fn check_dimension(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.dimension() {
            return Err(Error::DimensionMismatch {
                expected: self.dimension(),
                actual: x.len(),
            });
        }
        Ok(())
    }
}
