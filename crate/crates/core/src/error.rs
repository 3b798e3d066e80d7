use thiserror::Error;

/// Errors shared by every module of the workbench.
///
/// Certification failures are split from plain domain errors on purpose:
/// a `PrecisionInsufficient` is always retryable with a larger working
/// precision, while the others are contract violations by the caller.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid truncation: {0}")]
    InvalidTruncation(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("cannot certify: {0}")]
    CannotCertify(String),

    #[error("working precision insufficient: {0}")]
    PrecisionInsufficient(String),

    #[error("series truncation too small: {0}")]
    IncreaseTruncation(String),

    #[error("pole of J^l not cancelled: l = {l} exceeds N = {n}")]
    PoleNotCancelled { n: u32, l: u32 },

    #[error("system is not underdetermined: X = {x} columns, Y = {y} rows")]
    UnderdeterminedViolation { x: usize, y: usize },

    #[error("enumeration too large: {0}")]
    EnumerationTooLarge(String),

    #[error("no certified-nonzero prime found up to {pmax}; uncertain primes: {uncertain:?}")]
    PrimesExhausted { pmax: u64, uncertain: Vec<u64> },

    #[error("modular polynomial not determined: {0}")]
    Determination(String),

    #[error("inconsistent witness: {0}")]
    InconsistentWitness(String),

    #[error("missing constant in ledger: {0}")]
    MissingConstant(String),

    #[error("internal invariant breach: {0}")]
    Internal(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
