use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed permutation: {0}")]
    MalformedPermutation(String),
    #[error("group order exceeds the enumeration bound of {bound} elements")]
    EnumerationBoundExceeded { bound: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("exponent {k} is not coprime to {n}")]
    BadExponent { k: i64, n: u64 },
    #[error("value is not an algebraic integer at the prime {p}")]
    NotAlgebraicInteger { p: u64 },
    #[error("value of conductor {k} does not live over the residue field for m = {m}")]
    IdealMismatch { k: u64, m: u64 },
    #[error("character lifting failed: {0}")]
    LiftingFailure(String),
    #[error("no defect class found for a block of defect {defect}")]
    DefectClassNotFound { defect: u32 },
    #[error("no Brauer correspondent found")]
    CorrespondentNotFound,
    #[error("Brauer correspondent is ambiguous")]
    AmbiguousCorrespondent,
    #[error("defect group is not cyclic")]
    NotCyclicDefect,
    #[error("group too large for element enumeration ({0} elements)")]
    SizeBoundExceeded(u64),
    #[error("proven statement violated: {0}")]
    ProvenStatementViolated(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
