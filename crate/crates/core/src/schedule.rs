//! Tolerance relaxation control.
//!
//! A run starts from self-tuned tolerances chosen so that a target fraction
//! of the search box is feasible, then shrinks them with one of three
//! schedules: none, fixed exponential, or pseudo-adaptive. The
//! pseudo-adaptive schedule decreases tolerances when enough best
//! experiences are feasible, enforces an update when too many steps pass
//! without one, and force-marches the tolerances to their final values over
//! the last tenth of the schedule window so they are exact by `t_min`.

use rand::Rng;

use crate::constraint::{Problem, ToleranceState, FINAL_TOL_EQ, INEQ_ZERO_FLOOR};
use crate::error::{Error, Result};
use crate::suite::sampling::estimate_feasibility_ratio;
use crate::EvalCounters;

/// Coefficient anchor at `per = per_min` (also the safety-update coefficient).
pub const KTOL_AT_PER_MIN: f64 = 0.99;

/// Which tolerance-decrease schedule a run uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScheduleKind {
    /// Tolerances stay at their final values for the whole run.
    None,
    /// Self-tuned start, fixed exponential decrease every step.
    Exponential,
    /// Self-tuned start, feasibility-driven decrease with safety and endgame.
    PseudoAdaptive,
}

impl ScheduleKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ScheduleKind::None => "none",
            ScheduleKind::Exponential => "exp",
            ScheduleKind::PseudoAdaptive => "adaptive",
        }
    }
}

impl std::str::FromStr for ScheduleKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(ScheduleKind::None),
            "exp" | "exponential" => Ok(ScheduleKind::Exponential),
            "adaptive" | "pseudo-adaptive" => Ok(ScheduleKind::PseudoAdaptive),
            other => Err(Error::Config(format!(
                "unknown schedule `{other}` (expected none|exp|adaptive)"
            ))),
        }
    }
}

/// Schedule parameters. Defaults follow the benchmark protocol.
#[derive(Debug, Clone)]
pub struct ScheduleConfig {
    pub kind: ScheduleKind,
    /// Coefficient of the fixed exponential decrease.
    pub ktol_fixed: f64,
    /// Coefficient at `per = 100` for the pseudo-adaptive decrease.
    pub ktol_min: f64,
    /// Minimum percentage of feasible best experiences that triggers an update.
    pub per_min: f64,
    /// Step by which final tolerances must be reached (0.80 * t_max).
    pub t_min: usize,
    /// Target feasibility-ratio window for self-tuning, in percent.
    pub target_fr_low: f64,
    pub target_fr_high: f64,
    /// Window shift applied when the problem is already more feasible than
    /// `target_fr_high` ("increased in around 5%": the window becomes
    /// `[fr0 + bump - 1, fr0 + bump + 1]`, capped at 100).
    pub fr_bump_percent: f64,
    /// Equality tolerance kept this many times the inequality tolerance when
    /// both constraint kinds exist.
    pub eq_over_ineq_ratio: f64,
    /// An update is enforced when `t / n_updates` reaches this ratio.
    pub safety_ratio: f64,
    /// Samples per self-tuning probe.
    pub sampling_budget_per_probe: usize,
}

impl ScheduleConfig {
    /// Protocol parameters for a run of `t_max` steps.
    pub fn for_protocol(kind: ScheduleKind, t_max: usize) -> Self {
        Self {
            kind,
            ktol_fixed: 0.98,
            ktol_min: 0.90,
            per_min: 80.0,
            t_min: (0.80 * t_max as f64).round() as usize,
            target_fr_low: 20.0,
            target_fr_high: 25.0,
            fr_bump_percent: 5.0,
            eq_over_ineq_ratio: 10.0,
            safety_ratio: 20.0,
            sampling_budget_per_probe: 1000,
        }
    }

    pub fn validate(&self, t_max: usize) -> Result<()> {
        if !(self.ktol_min > 0.0 && self.ktol_min < KTOL_AT_PER_MIN) {
            return Err(Error::Config(format!(
                "ktol_min = {} must lie in (0, 0.99)",
                self.ktol_min
            )));
        }
        if !(self.per_min > 0.0 && self.per_min < 100.0) {
            return Err(Error::Config(format!(
                "per_min = {} must lie in (0, 100)",
                self.per_min
            )));
        }
        if self.t_min >= t_max {
            return Err(Error::Config(format!(
                "t_min = {} must be below t_max = {t_max}",
                self.t_min
            )));
        }
        if self.target_fr_low.is_nan()
            || self.target_fr_high.is_nan()
            || self.target_fr_low >= self.target_fr_high
        {
            return Err(Error::Config(format!(
                "target FR window [{}, {}] is empty",
                self.target_fr_low, self.target_fr_high
            )));
        }
        if self.sampling_budget_per_probe == 0 {
            return Err(Error::Config("probe budget must be positive".into()));
        }
        Ok(())
    }
}

/// Pseudo-adaptive decrease coefficient: linear from 0.99 at `per = per_min`
/// down to `ktol_min` at `per = 100`.
pub fn pseudo_adaptive_coefficient(per: f64, cfg: &ScheduleConfig) -> Result<f64> {
    if per > 100.0 {
        return Err(Error::OutOfDomain {
            name: "per",
            value: per,
            interval: "[per_min, 100]",
        });
    }
    Ok((KTOL_AT_PER_MIN - cfg.ktol_min) / (100.0 - cfg.per_min) * (100.0 - per) + cfg.ktol_min)
}

/// Exponential tolerance update: both tolerances scale by `ktol`, with the
/// equality floor and the inequality snap-to-zero applied.
pub fn apply_tolerance_update(state: &mut ToleranceState, ktol: f64) {
    debug_assert!(ktol > 0.0 && ktol < 1.0);
    state.rescale(ktol, ktol);
}

/// True when `t / max(1, n_updates)` has reached the safety ratio, i.e. too
/// many steps have passed per update performed.
pub fn safety_update_due(t: usize, n_updates: u64, cfg: &ScheduleConfig) -> bool {
    t as f64 / n_updates.max(1) as f64 >= cfg.safety_ratio
}

/// Per-step coefficient that takes a tolerance from its value at
/// `0.9 * t_min` down to `tol_final` in `round(0.1 * t_min)` steps.
/// Returns 1.0 when the tolerance is already at or below the target.
pub fn endgame_coefficient(tol_at_09tmin: f64, tol_final: f64, t_min: usize) -> f64 {
    if tol_at_09tmin <= tol_final {
        return 1.0;
    }
    let steps = ((0.1 * t_min as f64).round() as u32).max(1);
    (tol_final / tol_at_09tmin).powf(1.0 / steps as f64)
}

/// What a schedule step did to the tolerances.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UpdateKind {
    Unchanged,
    Exponential,
    Adaptive,
    Safety,
    Endgame,
}

impl UpdateKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            UpdateKind::Unchanged => "unchanged",
            UpdateKind::Exponential => "exponential",
            UpdateKind::Adaptive => "adaptive",
            UpdateKind::Safety => "safety",
            UpdateKind::Endgame => "endgame",
        }
    }
}

/// Drives one run's tolerance trajectory. Owns the endgame bookkeeping
/// (coefficients frozen on first entry into the forced-decrease window).
#[derive(Debug, Clone)]
pub struct Scheduler {
    cfg: ScheduleConfig,
    endgame: Option<(f64, f64)>,
}

impl Scheduler {
    pub fn new(cfg: ScheduleConfig) -> Self {
        Self { cfg, endgame: None }
    }

    pub fn config(&self) -> &ScheduleConfig {
        &self.cfg
    }

    /// Applies the schedule once per time-step, after best experiences were
    /// updated. `per` is the current percentage of feasible best experiences.
    ///
    /// Pseudo-adaptive priority: forced endgame decrease inside
    /// `(round(0.9 t_min), t_min]` while tolerances sit above final; else the
    /// feasibility-driven update for `per >= per_min`; else the safety
    /// update when due. From `t_min` on, values are pinned exactly final.
    pub fn step(&mut self, state: &mut ToleranceState, t: usize, per: f64) -> UpdateKind {
        debug_assert!((0.0..=100.0).contains(&per));
        match self.cfg.kind {
            ScheduleKind::None => UpdateKind::Unchanged,
            ScheduleKind::Exponential => {
                apply_tolerance_update(state, self.cfg.ktol_fixed);
                UpdateKind::Exponential
            }
            ScheduleKind::PseudoAdaptive => {
                let t_min = self.cfg.t_min;
                let window_start = (0.9 * t_min as f64).round() as usize;
                let kind = if t > window_start && t <= t_min && !state.at_final() {
                    let (k_ineq, k_eq) = *self.endgame.get_or_insert((
                        endgame_coefficient(state.tol_ineq(), INEQ_ZERO_FLOOR, t_min),
                        endgame_coefficient(state.tol_eq(), state.final_tol_eq(), t_min),
                    ));
                    state.rescale(k_ineq, k_eq);
                    UpdateKind::Endgame
                } else if per >= self.cfg.per_min {
                    let ktol = pseudo_adaptive_coefficient(per, &self.cfg)
                        .expect("per is a percentage");
                    apply_tolerance_update(state, ktol);
                    UpdateKind::Adaptive
                } else if safety_update_due(t, state.n_updates(), &self.cfg) {
                    apply_tolerance_update(state, KTOL_AT_PER_MIN);
                    UpdateKind::Safety
                } else {
                    UpdateKind::Unchanged
                };
                if t >= t_min {
                    state.pin_final();
                }
                kind
            }
        }
    }
}

/// Result of the self-tuned initial tolerance relaxation.
#[derive(Debug, Clone)]
pub struct SelfTuneOutcome {
    pub tolerances: ToleranceState,
    /// Probe iterations performed; CE cost is `probes * sampling_budget`.
    pub probes: usize,
    /// FR estimate at the returned tolerances, in percent.
    pub achieved_fr: f64,
    pub target_low: f64,
    pub target_high: f64,
    /// False when the window was unreachable within the probe budget and the
    /// closest probed tolerance was returned instead.
    pub in_window: bool,
}

const MAX_EXPANSIONS: usize = 30;
const MAX_PROBES: usize = 40;
/// Bisection stops once the bracket is this tight in ratio terms.
const BRACKET_RATIO: f64 = 1.15;

/// Searches for initial tolerances whose Monte-Carlo feasibility ratio lands
/// in the target window: bracket by decade expansion from 1e-4, then bisect
/// in log-space. When both constraint kinds exist the equality tolerance is
/// kept `eq_over_ineq_ratio` times the inequality one throughout. Every
/// probe evaluates `sampling_budget_per_probe` constraint sets (counted as
/// CEs). Never fails: an unreachable window returns the closest probed
/// tolerances with `in_window = false`.
pub fn self_tune_initial_tolerances<R: Rng + ?Sized>(
    problem: &Problem,
    cfg: &ScheduleConfig,
    rng: &mut R,
    counters: &mut EvalCounters,
) -> SelfTuneOutcome {
    let has_ineq = problem.n_inequality() > 0;
    let has_eq = problem.n_equality() > 0;
    if !has_ineq && !has_eq {
        // nothing to relax: only bounds constrain the problem
        return SelfTuneOutcome {
            tolerances: ToleranceState::final_values(),
            probes: 0,
            achieved_fr: 100.0,
            target_low: cfg.target_fr_low,
            target_high: cfg.target_fr_high,
            in_window: true,
        };
    }

    let state_for = |scale: f64| -> ToleranceState {
        match (has_ineq, has_eq) {
            (true, true) => ToleranceState::relaxed(scale, cfg.eq_over_ineq_ratio * scale),
            (true, false) => ToleranceState::relaxed(scale, FINAL_TOL_EQ),
            (false, true) => ToleranceState::relaxed(0.0, scale),
            (false, false) => unreachable!(),
        }
    };

    let mut probes = 0usize;
    fn probe_fr<R: Rng + ?Sized>(
        problem: &Problem,
        budget: usize,
        state: &ToleranceState,
        rng: &mut R,
        counters: &mut EvalCounters,
        probes: &mut usize,
    ) -> f64 {
        *probes += 1;
        estimate_feasibility_ratio(problem, state, budget, rng, Some(counters))
    }
    let budget = cfg.sampling_budget_per_probe;
    macro_rules! probe {
        ($state:expr) => {
            probe_fr(problem, budget, $state, rng, counters, &mut probes)
        };
    }

    let bump_window = |anchor: f64| {
        (
            (anchor + cfg.fr_bump_percent - 1.0).min(100.0),
            (anchor + cfg.fr_bump_percent + 1.0).min(100.0),
        )
    };

    // Window selection: bump above the problem's own FR when it is already
    // more feasible than the default target.
    let fr0 = probe!(&ToleranceState::final_values());
    let (mut lo, mut hi) = if fr0 > cfg.target_fr_high {
        bump_window(fr0)
    } else {
        (cfg.target_fr_low, cfg.target_fr_high)
    };
    let in_window = |fr: f64, lo: f64, hi: f64| fr >= lo && fr <= hi;
    let window_distance = |fr: f64, lo: f64, hi: f64| {
        if fr < lo {
            lo - fr
        } else if fr > hi {
            fr - hi
        } else {
            0.0
        }
    };

    let mut scale = 1e-4;
    let mut fr = probe!(&state_for(scale));
    // FR is non-decreasing in the tolerance, so a first probe already above
    // the window means the window is unreachable (the problem sits at the
    // target boundary and the zero-tolerance estimate fell on the other
    // side); rebase on the bump rule as if the boundary had been crossed.
    if fr > hi && hi < 100.0 {
        (lo, hi) = bump_window(fr.max(fr0));
    }

    let outcome = |scale: f64, fr: f64, probes: usize, ok: bool, lo: f64, hi: f64| SelfTuneOutcome {
        tolerances: state_for(scale),
        probes,
        achieved_fr: fr,
        target_low: lo,
        target_high: hi,
        in_window: ok,
    };

    let mut best = (scale, fr);
    if in_window(fr, lo, hi) {
        return outcome(scale, fr, probes, true, lo, hi);
    }

    // decade expansion until the estimate reaches the window's lower edge
    let mut below = scale;
    let mut expansions = 0;
    while fr < lo && expansions < MAX_EXPANSIONS {
        below = scale;
        scale *= 10.0;
        expansions += 1;
        fr = probe!(&state_for(scale));
        if window_distance(fr, lo, hi) < window_distance(best.1, lo, hi) {
            best = (scale, fr);
        }
    }

    let mut hit: Option<(f64, f64)> = in_window(fr, lo, hi).then_some((scale, fr));

    // FR(tol) can plateau just above the window's lower edge, where a single
    // noisy estimate dipping below `lo` strands the expansion a decade too
    // high. Re-check the bracket's lower edge before bisecting and pull the
    // bracket down while the re-probe contradicts the dip.
    while probes < MAX_PROBES && scale > below * 1.5 {
        let check = probe!(&state_for(below));
        if window_distance(check, lo, hi) < window_distance(best.1, lo, hi) {
            best = (below, check);
        }
        if check < lo {
            break;
        }
        if in_window(check, lo, hi) && hit.is_none_or(|(s, _)| below < s) {
            hit = Some((below, check));
        }
        scale = below;
        below = (below / 10.0).max(1e-4);
    }

    // Log-space bisection inside the bracket, continuing toward the smallest
    // tolerance whose estimate stays in the window (the least relaxation
    // that reaches the target).
    let (mut lo_scale, mut hi_scale) = (below, scale);
    while probes < MAX_PROBES && (hit.is_none() || hi_scale > lo_scale * BRACKET_RATIO) {
        let mid = (0.5 * (lo_scale.ln() + hi_scale.ln())).exp();
        fr = probe!(&state_for(mid));
        if window_distance(fr, lo, hi) < window_distance(best.1, lo, hi) {
            best = (mid, fr);
        }
        if in_window(fr, lo, hi) {
            if hit.is_none_or(|(s, _)| mid < s) {
                hit = Some((mid, fr));
            }
            hi_scale = mid;
        } else if fr < lo {
            lo_scale = mid;
        } else {
            hi_scale = mid;
        }
    }

    match hit {
        Some((scale, fr)) => outcome(scale, fr, probes, true, lo, hi),
        None => {
            let (scale, fr) = best;
            outcome(scale, fr, probes, false, lo, hi)
        }
    }
}
