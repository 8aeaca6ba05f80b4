use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure mode of the library. The `Display` form always starts with
/// the variant name so command-line users can match on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ZeroDenominator: {0}")]
    ZeroDenominator(String),

    #[error("OrderMismatch: left operand has order {left}, right operand has order {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("DegreeOutOfRange: degree {degree} exceeds series order {order}")]
    DegreeOutOfRange { degree: usize, order: usize },

    #[error("IndexOutOfRange: index {index} but explicit sequence has {len} entries")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("InvalidParams: {0}")]
    InvalidParams(String),

    #[error("InvalidArgument: {0}")]
    InvalidArgument(String),

    #[error("SingularPrefactor: {0}")]
    SingularPrefactor(String),

    #[error("DomainError: {0}")]
    DomainError(String),

    #[error("TruncationNotConverged: no convergence after {terms} terms")]
    TruncationNotConverged { terms: usize },

    /// A series that must be odd had a nonzero even coefficient.
    #[error(
        "ParityViolation: expected an odd series, found nonzero coefficient at degree {degree}"
    )]
    ParityViolation { degree: usize },

    #[error("ParseError: {0}")]
    Parse(String),
}

impl Error {
    /// Short machine-friendly name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::ZeroDenominator(_) => "ZeroDenominator",
            Error::OrderMismatch { .. } => "OrderMismatch",
            Error::DegreeOutOfRange { .. } => "DegreeOutOfRange",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::InvalidParams(_) => "InvalidParams",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::SingularPrefactor(_) => "SingularPrefactor",
            Error::DomainError(_) => "DomainError",
            Error::TruncationNotConverged { .. } => "TruncationNotConverged",
            Error::ParityViolation { .. } => "ParityViolation",
            Error::Parse(_) => "ParseError",
        }
    }
}
