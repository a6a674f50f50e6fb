use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown variable '{name}' at position {pos}")]
    UnknownVariable { name: String, pos: usize },

    #[error("coefficient {0} is not defined in the coefficient field")]
    BadCoefficient(String),

    #[error("not homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("not a curve: {0}")]
    NotACurve(String),

    #[error("inconsistent twists: {0}")]
    InconsistentTwists(String),

    #[error("liaison failed: {0}")]
    Liaison(String),

    #[error("cohomology window exceeded the cap of {cap} degrees")]
    WindowCap { cap: i32 },

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;
