use cm3_core::AlgebraError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),

    #[error("invalid specification: {0}")]
    Spec(String),

    #[error("{0} have a common zero on the line x = y = 0")]
    CommonZero(String),

    #[error("congruence q = αf² + βfg + γg² fails: {0}")]
    Congruence(String),

    #[error("not locally Cohen-Macaulay: {0}")]
    NotLocallyCm(String),

    #[error("invariant check failed: {0}")]
    Invariant(String),

    #[error("no family {label} in genus {genus}: {reason}")]
    Label { label: String, genus: i64, reason: String },

    #[error("degenerate family: {0}")]
    Degenerate(String),
}

pub type Result<T, E = CurveError> = std::result::Result<T, E>;
