use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("Pauli index {0} out of range 0..=3")]
    PauliIndex(usize),
    #[error("matrix is not Hermitian (residual {residual:e})")]
    NotHermitian { residual: f64 },
    #[error("trace {trace} differs from 1")]
    TraceNotOne { trace: f64 },
    #[error("state is not positive semidefinite (minimum eigenvalue {min_eigenvalue:e})")]
    NotPositive { min_eigenvalue: f64 },
    #[error("Werner weight {0} outside [0, 1]")]
    AlphaOutOfRange(f64),
    #[error("invalid probability table: {0}")]
    InvalidProbabilities(String),
    #[error("invalid basis: {0}")]
    InvalidBasis(String),
    #[error("Bloch vector norm {0} exceeds 1")]
    BlochNorm(f64),
    #[error("direction is not a unit vector (norm {0})")]
    NotUnit(f64),
    #[error("state has off-diagonal correlations up to {off_diagonal:e}; witness only covers diagonal correlation matrices")]
    OutOfClass { off_diagonal: f64 },
    #[error("measurement outcome {outcome} has probability {probability:e}")]
    ZeroProbabilityOutcome { outcome: usize, probability: f64 },
    #[error("outcome index {0} is not 0 or 1")]
    InvalidOutcome(usize),
    #[error("rotation axis {0} is not 2 or 3")]
    InvalidAxis(u8),
    #[error("optimizer did not converge within {evals} evaluations")]
    OptimizerFailure { evals: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}
