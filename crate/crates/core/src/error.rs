use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid domain: {0}")]
    InvalidDomain(String),

    #[error("{modes} modes exceed the aliasing bound {limit} of the grid")]
    Aliasing { modes: usize, limit: usize },

    #[error("operands live on different domains or bases")]
    DomainMismatch,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("quotient is undefined for the zero function")]
    UndefinedQuotient,

    #[error("rejected configuration: {0}")]
    RejectedConfig(String),

    #[error("negative grid value {min:e} violates the sign requirement (sup norm {sup:e})")]
    SignViolation { min: f64, sup: f64 },

    #[error("truncation radius {radius} must exceed epsilon {epsilon}")]
    Truncation { radius: f64, epsilon: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("axis {axis} out of range for a {dimension}-dimensional domain")]
    AxisOutOfRange { axis: usize, dimension: usize },
}
