//! Benchmark suite: the 13 constrained test problems, feasibility-ratio
//! estimation, and Latin Hypercube initialization.

pub mod problems;
pub mod sampling;

pub use problems::{get_problem, metadata, BenchmarkMetadata, FrReference, PROBLEM_NAMES};
pub use sampling::{estimate_feasibility_ratio, latin_hypercube_init, min_pairwise_distance};
