use thiserror::Error;

/// Errors raised by the series, modular-form and shuffle engines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("insufficient precision: need order {needed}, have {available}")]
    InsufficientPrecision { needed: i64, available: i64 },
    #[error("cannot invert a series that vanishes to its guaranteed order")]
    ZeroInverse,
    #[error("integrand {index} is not holomorphic at q = 0 (valuation {valuation})")]
    NotHolomorphic { index: usize, valuation: i64 },
    #[error("integration-by-parts residual is not constant: {0}")]
    NotConstantDifference(String),
    #[error("linear system has no solution")]
    SingularSystem,
    #[error("expression is not weight-homogeneous: weights {0} and {1}")]
    NotHomogeneous(i64, i64),
    #[error("weight mismatch: expected {expected}, found {found}")]
    WeightMismatch { expected: i64, found: i64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("the zero form has no divisor")]
    ZeroForm,
    #[error("valence formula violated: degree {degree}, expected {expected}")]
    ValenceViolation { degree: String, expected: String },
    #[error("unsupported point: {0}")]
    UnsupportedPoint(String),
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("Bol identity violated: E2-coefficient of power {power} is nonzero")]
    BolViolation { power: usize },
    #[error("linear system inconsistent at the determination bound: {0}")]
    SystemInconsistent(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
