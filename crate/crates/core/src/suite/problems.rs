//! The g01-g13 constrained benchmark suite.
//!
//! Definitions follow the standard published suite. Constraint counting uses
//! the interval conventions: g04's three range constraints and g05's
//! interval constraint are folded as `max(lower side, upper side) <= 0`, and
//! g12's disjoint-spheres membership is one constraint (the minimum over the
//! 9^3 sphere grid, which separates per coordinate).
//!
//! Reference optimum points are bundled for validation only; they were
//! projected slightly inside the feasible set (equalities at |h| = 1e-4 - 1e-8)
//! so feasibility checks are robust to floating-point noise.

use crate::constraint::Problem;
use crate::error::{Error, Result};

/// Names of the benchmark problems, in suite order.
pub const PROBLEM_NAMES: [&str; 13] = [
    "g01", "g02", "g03", "g04", "g05", "g06", "g07", "g08", "g09", "g10", "g11", "g12", "g13",
];

/// A reported reference value for a feasibility ratio.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FrReference {
    /// Reported percentage.
    Percent(f64),
    /// Reported as "< 0.0001" percent.
    BelowOneEMinusFour,
}

impl FrReference {
    pub fn as_percent(&self) -> Option<f64> {
        match self {
            FrReference::Percent(v) => Some(*v),
            FrReference::BelowOneEMinusFour => None,
        }
    }
}

impl std::fmt::Display for FrReference {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FrReference::Percent(v) => write!(f, "{v}"),
            FrReference::BelowOneEMinusFour => write!(f, "< 0.0001"),
        }
    }
}

/// Reference data for one suite problem: dimensions, constraint counts, and
/// the reported feasibility ratios and mean self-tuned initial tolerances.
#[derive(Debug, Clone)]
pub struct BenchmarkMetadata {
    pub name: &'static str,
    /// Optimum as printed in the results table (6 decimals).
    pub table_optimum: f64,
    pub dimension: usize,
    pub n_inequality: usize,
    pub n_equality: usize,
    /// FR with zero tolerances.
    pub fr_no_tolerance: FrReference,
    /// FR with the desired (final) tolerances.
    pub fr_desired_tolerance: FrReference,
    /// FR with the mean self-tuned initial tolerances.
    pub fr_initial_tolerance: f64,
    pub mean_initial_tol_ineq: Option<f64>,
    pub mean_initial_tol_eq: Option<f64>,
}

/// Looks up a benchmark problem and its metadata by name (`g01`..`g13`).
pub fn get_problem(name: &str) -> Result<(Problem, BenchmarkMetadata)> {
    let problem = match name {
        "g01" => g01(),
        "g02" => g02(),
        "g03" => g03(),
        "g04" => g04(),
        "g05" => g05(),
        "g06" => g06(),
        "g07" => g07(),
        "g08" => g08(),
        "g09" => g09(),
        "g10" => g10(),
        "g11" => g11(),
        "g12" => g12(),
        "g13" => g13(),
        other => {
            return Err(Error::UnknownProblem {
                name: other.to_string(),
                valid: PROBLEM_NAMES.join(", "),
            })
        }
    };
    let metadata = metadata(name).expect("metadata exists for every registered problem");
    Ok((problem, metadata))
}

/// Metadata for one problem name.
pub fn metadata(name: &str) -> Option<BenchmarkMetadata> {
    use FrReference::{BelowOneEMinusFour as Below, Percent};
    let m = |name,
             table_optimum,
             dimension,
             n_inequality,
             n_equality,
             fr_no_tolerance,
             fr_desired_tolerance,
             fr_initial_tolerance,
             mean_initial_tol_ineq,
             mean_initial_tol_eq| {
        BenchmarkMetadata {
            name,
            table_optimum,
            dimension,
            n_inequality,
            n_equality,
            fr_no_tolerance,
            fr_desired_tolerance,
            fr_initial_tolerance,
            mean_initial_tol_ineq,
            mean_initial_tol_eq,
        }
    };
    Some(match name {
        "g01" => m("g01", -15.000000, 13, 9, 0, Percent(0.0003), Percent(0.0003), 23.4617, Some(89.92), None),
        "g02" => m("g02", -0.803619, 20, 2, 0, Percent(99.9971), Percent(99.9971), 99.9971, Some(0.01), None),
        "g03" => m("g03", -1.000500, 10, 0, 1, Below, Percent(0.0002), 24.5335, None, Some(1.66)),
        "g04" => m("g04", -30665.538672, 5, 3, 0, Percent(26.9887), Percent(26.9887), 30.2026, Some(0.11), None),
        "g05" => m("g05", 5126.496714, 4, 1, 3, Below, Below, 23.3053, Some(68.88), Some(688.79)),
        "g06" => m("g06", -6961.813876, 2, 2, 0, Percent(0.0074), Percent(0.0074), 24.3050, Some(2790.51), None),
        "g07" => m("g07", 24.306209, 10, 8, 0, Percent(0.0001), Percent(0.0001), 23.8399, Some(383.89), None),
        "g08" => m("g08", -0.095825, 2, 2, 0, Percent(0.8610), Percent(0.8610), 23.4371, Some(9.88), None),
        "g09" => m("g09", 680.630057, 7, 4, 0, Percent(0.5232), Percent(0.5232), 24.0533, Some(421.13), None),
        "g10" => m("g10", 7049.248021, 8, 6, 0, Percent(0.0005), Percent(0.0005), 21.1715, Some(10.83), None),
        "g11" => m("g11", 0.749900, 2, 0, 1, Below, Percent(0.0108), 24.8914, None, Some(0.26)),
        "g12" => m("g12", -1.000000, 3, 1, 0, Percent(4.7713), Percent(4.7713), 22.0256, Some(0.11), None),
        "g13" => m("g13", 0.053942, 5, 0, 3, Below, Below, 22.8845, None, Some(6.63)),
        _ => return None,
    })
}

fn g01() -> Problem {
    let mut bounds = vec![(0.0, 1.0); 9];
    bounds.extend_from_slice(&[(0.0, 100.0); 3]);
    bounds.push((0.0, 1.0));
    Problem::new("g01", bounds, |x: &[f64]| {
        5.0 * (x[0] + x[1] + x[2] + x[3])
            - 5.0 * (x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3])
            - x[4..13].iter().sum::<f64>()
    })
    .expect("static bounds")
    .inequality(|x| 2.0 * x[0] + 2.0 * x[1] + x[9] + x[10] - 10.0)
    .inequality(|x| 2.0 * x[0] + 2.0 * x[2] + x[9] + x[11] - 10.0)
    .inequality(|x| 2.0 * x[1] + 2.0 * x[2] + x[10] + x[11] - 10.0)
    .inequality(|x| -8.0 * x[0] + x[9])
    .inequality(|x| -8.0 * x[1] + x[10])
    .inequality(|x| -8.0 * x[2] + x[11])
    .inequality(|x| -2.0 * x[3] - x[4] + x[9])
    .inequality(|x| -2.0 * x[5] - x[6] + x[10])
    .inequality(|x| -2.0 * x[7] - x[8] + x[11])
    .optimum(
        -15.0,
        Some(vec![
            1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 3.0, 3.0, 3.0, 1.0,
        ]),
    )
}

fn g02() -> Problem {
    const N: usize = 20;
    Problem::new("g02", vec![(0.0, 10.0); N], |x: &[f64]| {
        let sum_cos4: f64 = x.iter().map(|&v| v.cos().powi(4)).sum();
        let prod_cos2: f64 = x.iter().map(|&v| v.cos().powi(2)).product();
        let weighted: f64 = x
            .iter()
            .enumerate()
            .map(|(i, &v)| (i + 1) as f64 * v * v)
            .sum();
        -((sum_cos4 - 2.0 * prod_cos2) / weighted.sqrt()).abs()
    })
    .expect("static bounds")
    .inequality(|x| 0.75 - x.iter().product::<f64>())
    .inequality(|x| x.iter().sum::<f64>() - 7.5 * N as f64)
    .optimum(
        -0.80361910412559,
        Some(vec![
            3.16246061572185,
            3.12833142812967,
            3.09479212988791,
            3.06145059523469,
            3.02792915885555,
            2.9938260670173,
            2.95866871765285,
            2.9218422731245,
            0.49482511456933,
            0.4883571100549,
            0.48231642711865,
            0.47664475092742,
            0.47129550835493,
            0.46623099264167,
            0.46142004984199,
            0.45683664767217,
            0.45245876903267,
            0.44826762241853,
            0.4442470095876,
            0.44038285956757384,
        ]),
    )
}

fn g03() -> Problem {
    const N: usize = 10;
    Problem::new("g03", vec![(0.0, 1.0); N], |x: &[f64]| {
        -(N as f64).sqrt().powi(N as i32) * x.iter().product::<f64>()
    })
    .expect("static bounds")
    .equality(|x| x.iter().map(|&v| v * v).sum::<f64>() - 1.0)
    .optimum(
        -1.0005001000100004,
        Some(vec![0.31624357542881404; N]),
    )
}

fn g04() -> Problem {
    fn u(x: &[f64]) -> f64 {
        85.334407 + 0.0056858 * x[1] * x[4] + 0.0006262 * x[0] * x[3] - 0.0022053 * x[2] * x[4]
    }
    fn v(x: &[f64]) -> f64 {
        80.51249 + 0.0071317 * x[1] * x[4] + 0.0029955 * x[0] * x[1] + 0.0021813 * x[2] * x[2]
    }
    fn w(x: &[f64]) -> f64 {
        9.300961 + 0.0047026 * x[2] * x[4] + 0.0012547 * x[0] * x[2] + 0.0019085 * x[2] * x[3]
    }
    Problem::new(
        "g04",
        vec![
            (78.0, 102.0),
            (33.0, 45.0),
            (27.0, 45.0),
            (27.0, 45.0),
            (27.0, 45.0),
        ],
        |x: &[f64]| {
            5.3578547 * x[2] * x[2] + 0.8356891 * x[0] * x[4] + 37.293239 * x[0] - 40792.141
        },
    )
    .expect("static bounds")
    .inequality(|x| (u(x) - 92.0).max(-u(x)))
    .inequality(|x| (v(x) - 110.0).max(90.0 - v(x)))
    .inequality(|x| (w(x) - 25.0).max(20.0 - w(x)))
    .optimum(
        -30665.538671783317,
        Some(vec![
            78.0,
            33.0,
            29.995256030474934,
            45.0,
            36.77581290075658,
        ]),
    )
}

fn g05() -> Problem {
    Problem::new(
        "g05",
        vec![(0.0, 1200.0), (0.0, 1200.0), (-0.55, 0.55), (-0.55, 0.55)],
        |x: &[f64]| {
            3.0 * x[0] + 1e-6 * x[0].powi(3) + 2.0 * x[1] + (2e-6 / 3.0) * x[1].powi(3)
        },
    )
    .expect("static bounds")
    .inequality(|x| (x[2] - x[3] - 0.55).max(x[3] - x[2] - 0.55))
    .equality(|x| 1000.0 * (-x[2] - 0.25).sin() + 1000.0 * (-x[3] - 0.25).sin() + 894.8 - x[0])
    .equality(|x| {
        1000.0 * (x[2] - 0.25).sin() + 1000.0 * (x[2] - x[3] - 0.25).sin() + 894.8 - x[1]
    })
    .equality(|x| {
        1000.0 * (x[3] - 0.25).sin() + 1000.0 * (x[3] - x[2] - 0.25).sin() + 1294.8
    })
    .optimum(
        5126.4967140071,
        Some(vec![
            679.9451483135389,
            1026.0669760163973,
            0.11887636909441043,
            -0.3962334852217586,
        ]),
    )
}

fn g06() -> Problem {
    Problem::new("g06", vec![(13.0, 100.0), (0.0, 100.0)], |x: &[f64]| {
        (x[0] - 10.0).powi(3) + (x[1] - 20.0).powi(3)
    })
    .expect("static bounds")
    .inequality(|x| -(x[0] - 5.0).powi(2) - (x[1] - 5.0).powi(2) + 100.0)
    .inequality(|x| (x[0] - 6.0).powi(2) + (x[1] - 5.0).powi(2) - 82.81)
    .optimum(
        -6961.813875580138,
        Some(vec![14.095000000999997, 0.8429607912830482]),
    )
}

fn g07() -> Problem {
    Problem::new("g07", vec![(-10.0, 10.0); 10], |x: &[f64]| {
        x[0] * x[0] + x[1] * x[1] + x[0] * x[1] - 14.0 * x[0] - 16.0 * x[1]
            + (x[2] - 10.0).powi(2)
            + 4.0 * (x[3] - 5.0).powi(2)
            + (x[4] - 3.0).powi(2)
            + 2.0 * (x[5] - 1.0).powi(2)
            + 5.0 * x[6] * x[6]
            + 7.0 * (x[7] - 11.0).powi(2)
            + 2.0 * (x[8] - 10.0).powi(2)
            + (x[9] - 7.0).powi(2)
            + 45.0
    })
    .expect("static bounds")
    .inequality(|x| -105.0 + 4.0 * x[0] + 5.0 * x[1] - 3.0 * x[6] + 9.0 * x[7])
    .inequality(|x| 10.0 * x[0] - 8.0 * x[1] - 17.0 * x[6] + 2.0 * x[7])
    .inequality(|x| -8.0 * x[0] + 2.0 * x[1] + 5.0 * x[8] - 2.0 * x[9] - 12.0)
    .inequality(|x| 3.0 * (x[0] - 2.0).powi(2) + 4.0 * (x[1] - 3.0).powi(2) + 2.0 * x[2] * x[2] - 7.0 * x[3] - 120.0)
    .inequality(|x| 5.0 * x[0] * x[0] + 8.0 * x[1] + (x[2] - 6.0).powi(2) - 2.0 * x[3] - 40.0)
    .inequality(|x| x[0] * x[0] + 2.0 * (x[1] - 2.0).powi(2) - 2.0 * x[0] * x[1] + 14.0 * x[4] - 6.0 * x[5])
    .inequality(|x| 0.5 * (x[0] - 8.0).powi(2) + 2.0 * (x[1] - 4.0).powi(2) + 3.0 * x[4] * x[4] - x[5] - 30.0)
    .inequality(|x| -3.0 * x[0] + 6.0 * x[1] + 12.0 * (x[8] - 8.0).powi(2) - 7.0 * x[9])
    .optimum(
        24.306209068179,
        Some(vec![
            2.1719963414230397,
            2.3636830415186987,
            8.773925739094079,
            5.09598443746678,
            0.9906547564852923,
            1.4305739285668588,
            1.3216441537357548,
            9.828725765213512,
            8.280091588587034,
            8.375926647794126,
        ]),
    )
}

fn g08() -> Problem {
    use std::f64::consts::TAU;
    Problem::new("g08", vec![(0.0, 10.0), (0.0, 10.0)], |x: &[f64]| {
        -(TAU * x[0]).sin().powi(3) * (TAU * x[1]).sin() / (x[0].powi(3) * (x[0] + x[1]))
    })
    .expect("static bounds")
    .inequality(|x| x[0] * x[0] - x[1] + 1.0)
    .inequality(|x| 1.0 - x[0] + (x[1] - 4.0).powi(2))
    .optimum(
        -0.0958250414180359,
        Some(vec![1.227971352607526, 4.245373366122749]),
    )
}

fn g09() -> Problem {
    Problem::new("g09", vec![(-10.0, 10.0); 7], |x: &[f64]| {
        (x[0] - 10.0).powi(2)
            + 5.0 * (x[1] - 12.0).powi(2)
            + x[2].powi(4)
            + 3.0 * (x[3] - 11.0).powi(2)
            + 10.0 * x[4].powi(6)
            + 7.0 * x[5] * x[5]
            + x[6].powi(4)
            - 4.0 * x[5] * x[6]
            - 10.0 * x[5]
            - 8.0 * x[6]
    })
    .expect("static bounds")
    .inequality(|x| -127.0 + 2.0 * x[0] * x[0] + 3.0 * x[1].powi(4) + x[2] + 4.0 * x[3] * x[3] + 5.0 * x[4])
    .inequality(|x| -282.0 + 7.0 * x[0] + 3.0 * x[1] + 10.0 * x[2] * x[2] + x[3] - x[4])
    .inequality(|x| -196.0 + 23.0 * x[0] + x[1] * x[1] + 6.0 * x[5] * x[5] - 8.0 * x[6])
    .inequality(|x| 4.0 * x[0] * x[0] + x[1] * x[1] - 3.0 * x[0] * x[1] + 2.0 * x[2] * x[2] + 5.0 * x[5] - 11.0 * x[6])
    .optimum(
        680.630057374402,
        Some(vec![
            2.330499351431905,
            1.9513723684665305,
            -0.4775413995047083,
            4.365726249230606,
            -0.6244869591011981,
            1.0381309940937349,
            1.594226678102103,
        ]),
    )
}

fn g10() -> Problem {
    Problem::new(
        "g10",
        vec![
            (100.0, 10000.0),
            (1000.0, 10000.0),
            (1000.0, 10000.0),
            (10.0, 1000.0),
            (10.0, 1000.0),
            (10.0, 1000.0),
            (10.0, 1000.0),
            (10.0, 1000.0),
        ],
        |x: &[f64]| x[0] + x[1] + x[2],
    )
    .expect("static bounds")
    .inequality(|x| -1.0 + 0.0025 * (x[3] + x[5]))
    .inequality(|x| -1.0 + 0.0025 * (x[4] + x[6] - x[3]))
    .inequality(|x| -1.0 + 0.01 * (x[7] - x[4]))
    .inequality(|x| -x[0] * x[5] + 833.33252 * x[3] + 100.0 * x[0] - 83333.333)
    .inequality(|x| -x[1] * x[6] + 1250.0 * x[4] + x[1] * x[3] - 1250.0 * x[3])
    .inequality(|x| -x[2] * x[7] + 1250000.0 + x[2] * x[4] - 2500.0 * x[4])
    .optimum(
        7049.24802052867,
        Some(vec![
            579.3066891759429,
            1359.9706822781104,
            5109.970661639849,
            182.0176998067703,
            295.6011737428049,
            217.98229979322969,
            286.4165256639654,
            395.6011736428049,
        ]),
    )
}

fn g11() -> Problem {
    Problem::new("g11", vec![(-1.0, 1.0), (-1.0, 1.0)], |x: &[f64]| {
        x[0] * x[0] + (x[1] - 1.0).powi(2)
    })
    .expect("static bounds")
    .equality(|x| x[1] - x[0] * x[0])
    .optimum(0.7499, Some(vec![0.7070360740443163, 0.5]))
}

fn g12() -> Problem {
    Problem::new("g12", vec![(0.0, 10.0); 3], |x: &[f64]| {
        -(100.0 - (x[0] - 5.0).powi(2) - (x[1] - 5.0).powi(2) - (x[2] - 5.0).powi(2)) / 100.0
    })
    .expect("static bounds")
    // membership in one of the 9^3 disjoint spheres; the minimum over the
    // integer grid separates per coordinate
    .inequality(|x| {
        x.iter()
            .map(|&xi| {
                let c = xi.round().clamp(1.0, 9.0);
                (xi - c) * (xi - c)
            })
            .sum::<f64>()
            - 0.0625
    })
    .optimum(-1.0, Some(vec![5.0, 5.0, 5.0]))
}

fn g13() -> Problem {
    Problem::new(
        "g13",
        vec![
            (-2.3, 2.3),
            (-2.3, 2.3),
            (-3.2, 3.2),
            (-3.2, 3.2),
            (-3.2, 3.2),
        ],
        |x: &[f64]| (x[0] * x[1] * x[2] * x[3] * x[4]).exp(),
    )
    .expect("static bounds")
    .equality(|x| x.iter().map(|&v| v * v).sum::<f64>() - 10.0)
    .equality(|x| x[1] * x[2] - 5.0 * x[3] * x[4])
    .equality(|x| x[0].powi(3) + x[1].powi(3) + 1.0)
    .optimum(
        0.053941514041898,
        Some(vec![
            -1.7171422250557502,
            1.5957212218458252,
            1.8272502682485456,
            -0.763659881912867,
            -0.76365986736498,
        ]),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constraint::{is_feasible, ToleranceState};

    #[test]
    fn registry_knows_all_names_and_rejects_others() {
        for name in PROBLEM_NAMES {
            let (p, m) = get_problem(name).unwrap();
            assert_eq!(p.name(), name);
            assert_eq!(m.name, name);
        }
        let err = get_problem("g14").unwrap_err();
        assert!(err.to_string().contains("g01"));
        assert!(err.to_string().contains("g13"));
    }

    #[test]
    fn table_rows_match_registered_problems() {
        for name in PROBLEM_NAMES {
            let (p, m) = get_problem(name).unwrap();
            assert_eq!(p.dimension(), m.dimension, "{name}");
            assert_eq!(p.n_inequality(), m.n_inequality, "{name}");
            assert_eq!(p.n_equality(), m.n_equality, "{name}");
        }
    }

    #[test]
    fn constraint_counting_follows_interval_conventions() {
        let (g01, m01) = get_problem("g01").unwrap();
        assert_eq!((g01.dimension(), m01.n_inequality, m01.n_equality), (13, 9, 0));
        assert_eq!(m01.table_optimum, -15.000000);

        let (g13, m13) = get_problem("g13").unwrap();
        assert_eq!((g13.dimension(), m13.n_inequality, m13.n_equality), (5, 0, 3));
        assert_eq!(m13.table_optimum, 0.053942);

        let (g05, m05) = get_problem("g05").unwrap();
        assert_eq!((g05.dimension(), m05.n_inequality, m05.n_equality), (4, 1, 3));
        assert_eq!(m05.table_optimum, 5126.496714);

        let (_, m04) = get_problem("g04").unwrap();
        assert_eq!(m04.n_inequality, 3);
        let (_, m12) = get_problem("g12").unwrap();
        assert_eq!(m12.n_inequality, 1);
    }

    /// The bundled reference point must be inside the box, feasible at final
    /// tolerances, and reproduce the known optimum within 1e-6 relative.
    /// Against the 6-decimal table optimum an extra half-ulp of the printed
    /// precision (5e-7 absolute) is allowed.
    #[test]
    fn reference_optima_are_feasible_and_reproduce_the_optimum() {
        let final_tol = ToleranceState::final_values();
        for name in PROBLEM_NAMES {
            let (p, m) = get_problem(name).unwrap();
            let x = p.reference_optimum().expect("bundled point").to_vec();
            assert_eq!(x.len(), p.dimension(), "{name}");
            for (&xi, &(lo, hi)) in x.iter().zip(p.bounds()) {
                assert!(xi >= lo && xi <= hi, "{name}: {xi} outside [{lo}, {hi}]");
            }
            let raw = p.raw_constraints(&x);
            assert!(
                is_feasible(&p, &raw, &x, &final_tol),
                "{name}: reference point infeasible at final tolerances: {raw:?}"
            );
            let f = p.conflict(&x);
            let rel = (f - p.known_optimum()).abs() / p.known_optimum().abs();
            assert!(rel <= 1e-6, "{name}: f = {f} vs {} (rel {rel})", p.known_optimum());
            let table_err = (f - m.table_optimum).abs();
            assert!(
                table_err <= 1e-6 * f.abs() + 5e-7,
                "{name}: f = {f} vs table {} (abs {table_err})",
                m.table_optimum
            );
        }
    }

    #[test]
    fn g12_grid_minimum_equals_brute_force_over_all_spheres() {
        let (p, _) = get_problem("g12").unwrap();
        let brute = |x: &[f64]| -> f64 {
            let mut min = f64::INFINITY;
            for a in 1..=9 {
                for b in 1..=9 {
                    for c in 1..=9 {
                        let d = (x[0] - a as f64).powi(2)
                            + (x[1] - b as f64).powi(2)
                            + (x[2] - c as f64).powi(2);
                        min = min.min(d);
                    }
                }
            }
            min - 0.0625
        };
        let mut rng = crate::rng::component_rng(17, 0);
        for _ in 0..500 {
            let x: Vec<f64> = (0..3)
                .map(|_| rand::Rng::random_range(&mut rng, 0.0..10.0))
                .collect();
            let fast = p.raw_constraints(&x)[0];
            assert_eq!(fast.to_bits(), brute(&x).to_bits(), "at {x:?}");
        }
    }
}
