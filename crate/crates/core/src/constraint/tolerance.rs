//! Constraint-violation tolerances and their bookkeeping.

/// Desired (final) tolerance for equality constraint violations.
pub const FINAL_TOL_EQ: f64 = 1e-4;

/// Inequality tolerances at or below this value snap to exactly zero.
pub const INEQ_ZERO_FLOOR: f64 = 1e-5;

/// Current violation tolerances plus schedule bookkeeping.
///
/// Invariants maintained by every mutation:
/// * both tolerances are non-increasing over a run,
/// * `tol_ineq` is never inside `(0, INEQ_ZERO_FLOOR]` (it snaps to zero),
/// * `tol_eq` never drops below `final_tol_eq`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceState {
    tol_ineq: f64,
    tol_eq: f64,
    n_updates: u64,
    final_tol_eq: f64,
    ineq_zero_floor: f64,
}

impl ToleranceState {
    /// Relaxed tolerances, e.g. produced by self-tuning. Entry values are
    /// floored/snapped so the invariants hold from the start.
    pub fn relaxed(tol_ineq: f64, tol_eq: f64) -> Self {
        let mut state = Self {
            tol_ineq: 0.0,
            tol_eq: FINAL_TOL_EQ,
            n_updates: 0,
            final_tol_eq: FINAL_TOL_EQ,
            ineq_zero_floor: INEQ_ZERO_FLOOR,
        };
        state.tol_ineq = state.snap_ineq(tol_ineq.max(0.0));
        state.tol_eq = tol_eq.max(FINAL_TOL_EQ);
        state
    }

    /// The desired end-of-run tolerances: `tol_ineq = 0`, `tol_eq = 1e-4`.
    pub fn final_values() -> Self {
        Self::relaxed(0.0, FINAL_TOL_EQ)
    }

    /// Exactly zero tolerances on both kinds (the static penalization of the
    /// additive scheme is defined without tolerance terms).
    pub fn exact() -> Self {
        Self::offline(0.0, 0.0)
    }

    /// Arbitrary tolerances for offline estimation: the equality floor is
    /// the given value itself, so `tol_eq` below 1e-4 (down to exactly zero)
    /// is honored. The inequality snap-to-zero still applies.
    pub fn offline(tol_ineq: f64, tol_eq: f64) -> Self {
        let tol_eq = tol_eq.max(0.0);
        let mut state = Self {
            tol_ineq: 0.0,
            tol_eq,
            n_updates: 0,
            final_tol_eq: tol_eq,
            ineq_zero_floor: INEQ_ZERO_FLOOR,
        };
        state.tol_ineq = state.snap_ineq(tol_ineq.max(0.0));
        state
    }

    pub fn tol_ineq(&self) -> f64 {
        self.tol_ineq
    }

    pub fn tol_eq(&self) -> f64 {
        self.tol_eq
    }

    pub fn n_updates(&self) -> u64 {
        self.n_updates
    }

    pub fn final_tol_eq(&self) -> f64 {
        self.final_tol_eq
    }

    /// True once both tolerances sit at their final values.
    pub fn at_final(&self) -> bool {
        self.tol_ineq == 0.0 && self.tol_eq == self.final_tol_eq
    }

    fn snap_ineq(&self, value: f64) -> f64 {
        if value <= self.ineq_zero_floor {
            0.0
        } else {
            value
        }
    }

    /// Multiplies each tolerance by its own coefficient, applying the
    /// equality floor and the inequality snap-to-zero, and counts one update.
    pub fn rescale(&mut self, ktol_ineq: f64, ktol_eq: f64) {
        self.tol_ineq = self.snap_ineq(ktol_ineq * self.tol_ineq);
        self.tol_eq = (ktol_eq * self.tol_eq).max(self.final_tol_eq);
        self.n_updates += 1;
    }

    /// Forces both tolerances to their exact final values without counting
    /// an update.
    pub fn pin_final(&mut self) {
        self.tol_ineq = 0.0;
        self.tol_eq = self.final_tol_eq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rescale_floors_and_snaps() {
        let mut t = ToleranceState::relaxed(2.0, 1.05e-4);
        t.rescale(0.5, 0.9);
        assert_eq!(t.tol_ineq(), 1.0);
        assert_eq!(t.tol_eq(), 1e-4); // max(9.45e-5, 1e-4)
        assert_eq!(t.n_updates(), 1);
    }

    #[test]
    fn ineq_snaps_to_zero_only_at_or_below_floor() {
        // 1.5e-5 * 0.9 = 1.35e-5 stays, 1.215e-5 stays, then <= 1e-5 snaps to 0
        let mut t = ToleranceState::relaxed(1.5e-5, 1e-4);
        t.rescale(0.9, 0.9);
        assert!(t.tol_ineq() > 1e-5);
        t.rescale(0.9, 0.9);
        assert!(t.tol_ineq() > 1e-5);
        while t.tol_ineq() > 0.0 {
            t.rescale(0.9, 0.9);
        }
        assert_eq!(t.tol_ineq(), 0.0);
        t.rescale(0.9, 0.9);
        assert_eq!(t.tol_ineq(), 0.0);
    }

    #[test]
    fn relaxed_entry_values_respect_invariants() {
        let t = ToleranceState::relaxed(5e-6, 1e-6);
        assert_eq!(t.tol_ineq(), 0.0);
        assert_eq!(t.tol_eq(), FINAL_TOL_EQ);
    }
}
