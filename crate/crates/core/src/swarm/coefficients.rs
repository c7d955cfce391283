//! Dynamics coefficient formulations.
//!
//! Three formulations drive the velocity update. The classical one draws each
//! attraction strength uniformly in `[0, weight]`. The two randomized-range
//! variants draw the overall attraction in `[phi_min, phi_max]` with the
//! acceleration weight `aw` at the centre of the interval, then split it
//! between individuality (`ip`) and sociality (`sp = 1 - ip`).

use rand::Rng;

use crate::error::{Error, Result};

/// Which velocity-update formulation a coefficient set encodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Formulation {
    Classical,
    Rrr1,
    Rrr2,
}

/// One sub-neighbourhood's dynamics coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CoefficientSet {
    Classical {
        /// Inertia weight.
        w: f64,
        /// Individuality weight.
        iw: f64,
        /// Sociality weight.
        sw: f64,
    },
    Rrr {
        formulation: Formulation,
        w: f64,
        /// Acceleration weight, the centre of `[phi_min, phi_max]`.
        aw: f64,
        /// Individuality proportion in `[0, 1)`.
        ip: f64,
        /// Sociality proportion, `1 - ip`.
        sp: f64,
        phi_min: f64,
        phi_max: f64,
    },
}

fn check_ip(ip: f64) -> Result<()> {
    if !(0.0..1.0).contains(&ip) {
        return Err(Error::OutOfDomain {
            name: "ip",
            value: ip,
            interval: "[0, 1)",
        });
    }
    Ok(())
}

/// Classical coefficients (inertia, individuality, sociality weights).
pub fn classical_coefficients(w: f64, iw: f64, sw: f64) -> Result<CoefficientSet> {
    if iw < 0.0 {
        return Err(Error::OutOfDomain {
            name: "iw",
            value: iw,
            interval: "[0, inf)",
        });
    }
    if sw < 0.0 {
        return Err(Error::OutOfDomain {
            name: "sw",
            value: sw,
            interval: "[0, inf)",
        });
    }
    Ok(CoefficientSet::Classical { w, iw, sw })
}

/// First randomized-range formulation: `aw` in (1.00, 2.00),
/// `w = aw - 1`, `phi_max = (3/2)(w+1)`, `phi_min = (1/2)(w+1)`.
pub fn rrr1_coefficients(aw: f64, ip: f64) -> Result<CoefficientSet> {
    if !(aw > 1.00 && aw < 2.00) {
        return Err(Error::OutOfDomain {
            name: "aw",
            value: aw,
            interval: "(1.00, 2.00)",
        });
    }
    check_ip(ip)?;
    let w = aw - 1.0;
    let phi_min = 0.5 * (w + 1.0);
    let phi_max = 3.0 * phi_min;
    Ok(CoefficientSet::Rrr {
        formulation: Formulation::Rrr1,
        w,
        aw,
        ip,
        sp: 1.0 - ip,
        phi_min,
        phi_max,
    })
}

/// Second randomized-range formulation: `aw` in (1.00, 2.61],
/// `w = 1/aw - 2 + aw`, `phi_max = 2(w+1)`, `phi_min = 2*aw - phi_max`.
pub fn rrr2_coefficients(aw: f64, ip: f64) -> Result<CoefficientSet> {
    if !(aw > 1.00 && aw <= 2.61) {
        return Err(Error::OutOfDomain {
            name: "aw",
            value: aw,
            interval: "(1.00, 2.61]",
        });
    }
    check_ip(ip)?;
    let w = 1.0 / aw - 2.0 + aw;
    let phi_max = 2.0 * (w + 1.0);
    let phi_min = 2.0 * aw - phi_max;
    Ok(CoefficientSet::Rrr {
        formulation: Formulation::Rrr2,
        w,
        aw,
        ip,
        sp: 1.0 - ip,
        phi_min,
        phi_max,
    })
}

impl CoefficientSet {
    pub fn formulation(&self) -> Formulation {
        match self {
            CoefficientSet::Classical { .. } => Formulation::Classical,
            CoefficientSet::Rrr { formulation, .. } => *formulation,
        }
    }

    /// Inertia weight.
    pub fn w(&self) -> f64 {
        match self {
            CoefficientSet::Classical { w, .. } => *w,
            CoefficientSet::Rrr { w, .. } => *w,
        }
    }

    /// Acceleration weight: `iw + sw` for the classical formulation, the
    /// interval centre for the randomized-range ones.
    pub fn aw(&self) -> f64 {
        match self {
            CoefficientSet::Classical { iw, sw, .. } => iw + sw,
            CoefficientSet::Rrr { aw, .. } => *aw,
        }
    }

    /// Draws the (individuality, sociality) attraction strengths for one
    /// coordinate. Two independent uniforms are consumed per call, the
    /// individuality draw first.
    pub fn draw_attractions<R: Rng + ?Sized>(&self, rng: &mut R) -> (f64, f64) {
        match self {
            CoefficientSet::Classical { iw, sw, .. } => {
                let ui: f64 = rng.random();
                let us: f64 = rng.random();
                (iw * ui, sw * us)
            }
            CoefficientSet::Rrr {
                ip,
                sp,
                phi_min,
                phi_max,
                ..
            } => {
                let ui: f64 = rng.random();
                let us: f64 = rng.random();
                let span = phi_max - phi_min;
                (ip * (phi_min + span * ui), sp * (phi_min + span * us))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rrr1_derivation_at_protocol_setting() {
        // aw = 1.80, ip = 0.5: w = 0.80, phi_max = 2.70, phi_min = 0.90
        let c = rrr1_coefficients(1.80, 0.5).unwrap();
        let CoefficientSet::Rrr {
            w,
            ip,
            sp,
            phi_min,
            phi_max,
            ..
        } = c
        else {
            panic!("expected RRR variant")
        };
        assert_relative_eq!(w, 0.80, max_relative = 1e-12);
        assert_relative_eq!(phi_max, 2.70, max_relative = 1e-12);
        assert_relative_eq!(phi_min, 0.90, max_relative = 1e-12);
        assert_eq!(ip, 0.5);
        assert_eq!(sp, 0.5);
    }

    #[test]
    fn rrr1_limit_toward_upper_bound() {
        let c = rrr1_coefficients(2.0 - 1e-12, 0.5).unwrap();
        assert_relative_eq!(c.w(), 1.0, max_relative = 1e-9);
        let CoefficientSet::Rrr { phi_min, phi_max, .. } = c else { unreachable!() };
        assert_relative_eq!(phi_max, 3.0, max_relative = 1e-9);
        assert_relative_eq!(phi_min, 1.0, max_relative = 1e-9);
    }

    #[test]
    fn rrr_interval_centre_is_aw_and_rrr1_ratio_is_three() {
        let mut aw = 1.01;
        while aw < 2.0 {
            let c = rrr1_coefficients(aw, 0.25).unwrap();
            let CoefficientSet::Rrr { phi_min, phi_max, .. } = c else { unreachable!() };
            assert_relative_eq!((phi_min + phi_max) / 2.0, aw, max_relative = 1e-12);
            assert_eq!(phi_max, 3.0 * phi_min);
            aw += 0.037;
        }
        let mut aw = 1.01;
        while aw <= 2.61 {
            let c = rrr2_coefficients(aw, 0.25).unwrap();
            let CoefficientSet::Rrr { phi_min, phi_max, .. } = c else { unreachable!() };
            assert_relative_eq!((phi_min + phi_max) / 2.0, aw, max_relative = 1e-12);
            assert_relative_eq!(phi_min + phi_max, 2.0 * aw, max_relative = 1e-12);
            aw += 0.043;
        }
    }

    #[test]
    fn rrr2_derivation_at_protocol_setting() {
        // aw = 2.40: w ~ 0.816667, phi_max ~ 3.633333, phi_min ~ 1.166667
        let c = rrr2_coefficients(2.40, 0.5).unwrap();
        let CoefficientSet::Rrr { w, phi_min, phi_max, .. } = c else { unreachable!() };
        assert!((w - 0.816667).abs() < 1e-6);
        assert!((phi_max - 3.633333).abs() < 1e-6);
        assert!((phi_min - 1.166667).abs() < 1e-6);
    }

    #[test]
    fn rrr_domain_bounds() {
        assert!(rrr1_coefficients(1.0, 0.5).is_err());
        assert!(rrr1_coefficients(2.0, 0.5).is_err());
        assert!(rrr2_coefficients(2.61, 0.5).is_ok()); // closed upper bound
        assert!(rrr2_coefficients(2.6100001, 0.5).is_err());
        assert!(rrr1_coefficients(1.5, 1.0).is_err());
        let err = rrr1_coefficients(2.5, 0.5).unwrap_err();
        assert!(err.to_string().contains("(1.00, 2.00)"));
    }

    #[test]
    fn classical_records_aw_as_weight_sum() {
        let c = classical_coefficients(0.7298, 1.4961, 1.4961).unwrap();
        assert_relative_eq!(c.aw(), 2.9922, max_relative = 1e-12);
        assert!(classical_coefficients(0.5, -0.1, 1.0).is_err());
        assert!(classical_coefficients(0.5, 1.0, -0.1).is_err());
        // zero coefficients are allowed (fixed-point dynamics)
        assert!(classical_coefficients(0.0, 0.0, 0.0).is_ok());
    }

    #[test]
    fn sampled_attractions_stay_in_their_scaled_intervals() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for &(c, ip) in &[
            (rrr1_coefficients(1.80, 0.5).unwrap(), 0.5),
            (rrr2_coefficients(2.40, 0.25).unwrap(), 0.25),
        ] {
            let CoefficientSet::Rrr { phi_min, phi_max, sp, .. } = c else { unreachable!() };
            for _ in 0..100_000 {
                let (phi_i, phi_s) = c.draw_attractions(&mut rng);
                assert!(phi_i >= ip * phi_min && phi_i <= ip * phi_max);
                assert!(phi_s >= sp * phi_min && phi_s <= sp * phi_max);
            }
        }
    }
}
