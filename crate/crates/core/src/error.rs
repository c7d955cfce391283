//! Error type shared across the crate.

/// Errors produced by swarm construction, evaluation, and the harness.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A coefficient or parameter fell outside its admissible interval.
    #[error("{name} = {value} outside admissible interval {interval}")]
    OutOfDomain {
        name: &'static str,
        value: f64,
        interval: &'static str,
    },

    /// Vector lengths disagree with the problem dimension.
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    /// A variable's lower bound is not strictly below its upper bound.
    #[error("degenerate bounds for variable {index}: [{lower}, {upper}]")]
    DegenerateBounds {
        index: usize,
        lower: f64,
        upper: f64,
    },

    /// Topology construction asked for an empty swarm or an empty subgroup map.
    #[error("topology requires {0}")]
    InvalidTopology(&'static str),

    /// Static penalty coefficient lists must match the violation vector length.
    #[error("penalty coefficient list length {got} does not match violation count {expected}")]
    PenaltyLength { expected: usize, got: usize },

    /// A constraint function returned NaN or infinity.
    #[error("constraint {index} returned a non-finite value at {position:?}")]
    NonFiniteConstraint { index: usize, position: Vec<f64> },

    /// Benchmark registry lookup failed.
    #[error("unknown problem `{name}`; valid names are {valid}")]
    UnknownProblem { name: String, valid: String },

    /// Evaluator failure during a swarm step, with the particle attached.
    #[error("particle {particle}: {source}")]
    Particle {
        particle: usize,
        #[source]
        source: Box<Error>,
    },

    /// Invalid experiment configuration.
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
