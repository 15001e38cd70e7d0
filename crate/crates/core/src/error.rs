use thiserror::Error;

/// Errors raised by the algebra routines.
///
/// Mathematical verdicts ("not a line", "not a member") are never errors;
/// these variants cover violated preconditions and internal failures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,
    #[error("both generators are constant, so k[f, g] = k")]
    TrivialAlgebra,
    #[error("degree {0} is not in the degree semigroup")]
    NotInSemigroup(usize),
    #[error("inner degree {inner} does not divide degree {degree}")]
    BadDegree { degree: usize, inner: usize },
    #[error("polynomial does not factor through the given inner polynomial")]
    NotComposable,
    #[error("polynomial is not monic: {0}")]
    NotMonic(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("subalgebra completion exceeded the iteration cap of {0} steps")]
    InternalLimitExceeded(usize),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;
