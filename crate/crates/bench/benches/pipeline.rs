use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use std::hint::black_box;

use cpso_core::constraint::{ConflictEvaluator, EvalCounters, PenalizedProblem, PenaltyConfig};
use cpso_core::harness::default_coefficient_sets;
use cpso_core::rng::{component_rng, particle_rngs};
use cpso_core::suite::{estimate_feasibility_ratio, get_problem, latin_hypercube_init};
use cpso_core::swarm::{build_forward_topology, Swarm};
use cpso_core::ToleranceState;

fn bench_evaluation(c: &mut Criterion) {
    let mut group = c.benchmark_group("evaluate");
    for name in ["g01", "g02", "g12", "g13"] {
        let (problem, _) = get_problem(name).unwrap();
        let ev = PenalizedProblem::new(problem.clone(), PenaltyConfig::default());
        let tol = ToleranceState::final_values();
        let x: Vec<f64> = problem.bounds().iter().map(|&(lo, hi)| 0.5 * (lo + hi)).collect();
        group.bench_function(name, |b| {
            b.iter(|| {
                let mut counters = EvalCounters::default();
                black_box(ev.evaluate(black_box(&x), &tol, &mut counters).unwrap())
            })
        });
    }
    group.finish();
}

fn bench_swarm_step(c: &mut Criterion) {
    let (problem, _) = get_problem("g01").unwrap();
    let ev = PenalizedProblem::new(problem.clone(), PenaltyConfig::default());
    let tol = ToleranceState::final_values();
    let topology = build_forward_topology(50, 3, 2).unwrap();
    let coeffs = default_coefficient_sets();
    let mut init_rng = component_rng(1, 0);
    let positions = latin_hypercube_init(50, problem.bounds(), 10, &mut init_rng).unwrap();
    let mut counters = EvalCounters::default();
    let (swarm, _) = Swarm::from_positions(positions, &ev, &tol, &mut counters).unwrap();

    c.bench_function("swarm_step_50_particles_g01", |b| {
        b.iter_batched(
            || (swarm.clone(), particle_rngs(1, 50), EvalCounters::default()),
            |(mut swarm, mut rngs, mut counters)| {
                swarm
                    .step(&topology, &coeffs, &ev, &tol, &mut rngs, &mut counters)
                    .unwrap();
                swarm
            },
            BatchSize::SmallInput,
        )
    });
}

fn bench_sampling(c: &mut Criterion) {
    let (g12, _) = get_problem("g12").unwrap();
    let tol = ToleranceState::final_values();
    c.bench_function("fr_g12_10k_samples", |b| {
        b.iter(|| {
            let mut rng = component_rng(7, 2);
            black_box(estimate_feasibility_ratio(&g12, &tol, 10_000, &mut rng, None))
        })
    });

    let (g01, _) = get_problem("g01").unwrap();
    c.bench_function("lhs_50_points_100_candidates_g01", |b| {
        b.iter(|| {
            let mut rng = component_rng(7, 0);
            black_box(latin_hypercube_init(50, g01.bounds(), 100, &mut rng).unwrap())
        })
    });
}

criterion_group!(benches, bench_evaluation, bench_swarm_step, bench_sampling);
criterion_main!(benches);
