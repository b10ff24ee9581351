use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degenerate coefficients: the normal part is all zeros")]
    DegenerateLine,
    #[error("the two lines are identical")]
    IdenticalLines,
    #[error("witness point lies on the base line")]
    WitnessOnLine,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("ambient dimension {0} exceeds the configured maximum {1}")]
    DimensionTooLarge(usize, usize),
    #[error("not an arrangement: {0}")]
    NotAnArrangement(String),
    #[error("all lines are parallel")]
    AllParallel,
    #[error("all elements pass through a common point")]
    AllConcurrent,
    #[error("duplicate hyperplane at indices {0} and {1}")]
    DuplicateHyperplane(usize, usize),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("pseudolines {0} and {1} do not cross")]
    NoCrossing(usize, usize),
    #[error("pseudolines {0} and {1} cross more than once")]
    MultipleCrossings(usize, usize),
    #[error("invalid arrangement: {0}")]
    InvalidArrangement(String),
    #[error("generator spec infeasible: {0}")]
    SpecInfeasible(String),
    #[error("line cannot be represented as an x-monotone pseudoline")]
    UnrepresentableLine,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("input too large for the brute-force oracle: {0}")]
    OracleCapExceeded(String),
}

pub type Result<T> = std::result::Result<T, Error>;
