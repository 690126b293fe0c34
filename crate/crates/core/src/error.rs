use thiserror::Error;

/// Errors produced by model construction, solvers and analyses.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("operands live on different state spaces")]
    SpaceMismatch,

    #[error("outcome labels do not match")]
    LabelMismatch,

    #[error("invalid state space: {0}")]
    InvalidStateSpace(String),

    #[error("invalid effect: {0}")]
    InvalidEffect(String),

    #[error("invalid measurement: {0}")]
    InvalidMeasurement(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid ensemble: {0}")]
    InvalidEnsemble(String),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("guard exceeded: {what} = {got} (limit {limit})")]
    GuardExceeded {
        what: &'static str,
        got: usize,
        limit: usize,
    },

    #[error("malformed linear program: {0}")]
    MalformedProgram(String),

    #[error("infeasible constraint system: {0}")]
    Infeasible(String),

    #[error("invalid quantum operator: {0}")]
    InvalidOperator(String),

    #[error("invalid POVM: {0}")]
    InvalidPovm(String),

    #[error("unknown catalog entry `{0}`")]
    UnknownCatalogEntry(String),

    #[error("operation requires a classical (simplex) system: {0}")]
    NotClassical(String),

    #[error("witness does not reproduce the reported value: {0}")]
    WitnessMismatch(String),

    #[error("degenerate random sample: {0}")]
    DegenerateSample(String),

    #[error("construction contradicts a structural guarantee: {0}")]
    TheoremViolation(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
