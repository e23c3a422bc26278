use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("element is singular (condition estimate {condition:.3e})")]
    SingularElement { condition: f64 },

    #[error("element is not Hermitian (|U - U†| = {residual:.3e})")]
    NotHermitian { residual: f64 },

    #[error("exponential series did not converge within {iterations} terms")]
    ExpNonConvergence { iterations: usize },

    #[error("grade {0} is outside 0..=4")]
    GradeOutOfRange(usize),

    #[error("bilinear form rank {0} is outside 1..=4")]
    FormRankOutOfRange(usize),

    #[error("{what} exceeds the resource cap ({value} > {cap})")]
    ResourceCap { what: &'static str, value: usize, cap: usize },

    #[error("not a Hermitian idempotent: {0}")]
    NotIdempotent(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("membership violated: {0}")]
    Membership(String),

    #[error("unknown blade label {0:?}")]
    UnknownBlade(String),
}

pub type Result<T> = std::result::Result<T, Error>;
