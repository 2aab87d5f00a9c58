use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("series variables differ: {0} vs {1}")]
    VariableMismatch(String, String),
    #[error("constant term is zero, series is not invertible")]
    NonInvertibleConstantTerm,
    #[error("bad constant term: {0}")]
    BadConstantTerm(String),
    #[error("coefficient {requested} requested beyond truncation order {order}")]
    OrderExceeded { requested: usize, order: usize },
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("parity mismatch: {0}")]
    ParityMismatch(String),
    #[error("degree too large: {0}")]
    DegreeTooLarge(String),
    #[error("unsupported weight kind: {0}")]
    UnsupportedWeightKind(String),
    #[error("weight has a nonzero constant term A_0")]
    UnsupportedConstantTerm,
    #[error("invalid local type: {0}")]
    InvalidLocalType(String),
    #[error("point lies on the wall of subset {0:?}")]
    OnWall(Vec<usize>),
    #[error("only {found} points found, {needed} needed")]
    InsufficientPoints { found: usize, needed: usize },
    #[error("validation failed: {0}")]
    ValidationFailure(String),
    #[error("quasimodular forms of odd weight cap {0} are not supported")]
    OddWeight(u32),
    #[error("insufficient order: {0}")]
    InsufficientOrder(String),
    #[error("no solution, first inconsistent coefficient at q^{0}")]
    NoSolution(usize),
    #[error("underdetermined fit: only {0} validation coefficients")]
    Underdetermined(usize),
    #[error("incomplete input: {0}")]
    IncompleteInput(String),
    #[error("incompatible decoration: {0}")]
    IncompatibleDecoration(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("io failure: {0}")]
    IoFailure(String),
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
}

impl Error {
    pub fn kind(&self) -> &'static str {
        match self {
            Error::VariableMismatch(..) => "VariableMismatch",
            Error::NonInvertibleConstantTerm => "NonInvertibleConstantTerm",
            Error::BadConstantTerm(_) => "BadConstantTerm",
            Error::OrderExceeded { .. } => "OrderExceeded",
            Error::SizeMismatch(_) => "SizeMismatch",
            Error::ParityMismatch(_) => "ParityMismatch",
            Error::DegreeTooLarge(_) => "DegreeTooLarge",
            Error::UnsupportedWeightKind(_) => "UnsupportedWeightKind",
            Error::UnsupportedConstantTerm => "UnsupportedConstantTerm",
            Error::InvalidLocalType(_) => "InvalidLocalType",
            Error::OnWall(_) => "OnWall",
            Error::InsufficientPoints { .. } => "InsufficientPoints",
            Error::ValidationFailure(_) => "ValidationFailure",
            Error::OddWeight(_) => "OddWeight",
            Error::InsufficientOrder(_) => "InsufficientOrder",
            Error::NoSolution(_) => "NoSolution",
            Error::Underdetermined(_) => "Underdetermined",
            Error::IncompleteInput(_) => "IncompleteInput",
            Error::IncompatibleDecoration(_) => "IncompatibleDecoration",
            Error::InvalidInput(_) => "InvalidInput",
            Error::IoFailure(_) => "IOFailure",
            Error::InvariantViolation(_) => "InvariantViolation",
        }
    }

    /// Failures that indicate a bug rather than bad input.
    pub fn is_invariant_violation(&self) -> bool {
        matches!(self, Error::InvariantViolation(_) | Error::ValidationFailure(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
