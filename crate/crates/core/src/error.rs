//! Crate-wide error type and result alias.

use thiserror::Error;

/// Everything that can go wrong while building instances, parsing input,
/// or running checks.
#[derive(Debug, Error)]
pub enum DcaError {
    #[error("ground set must contain at least one element")]
    EmptyGround,
    #[error("ground set size {n} exceeds the cap {max_n}")]
    CapExceeded { n: u8, max_n: u8 },
    #[error("function has an empty effective domain")]
    EmptyDomain,
    #[error("lift needs at least {needed} auxiliary elements, got {s}")]
    LiftTooSmall { s: u8, needed: u8 },
    #[error("expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("element {el} is outside the ground set 1..={n}")]
    InvalidElement { el: u8, n: u8 },
    #[error("duplicate subset {0:?}")]
    DuplicateSubset(Vec<u8>),
    #[error("value must be finite, got {0}")]
    NonFiniteValue(f64),
    #[error("multiple-exchange checks are capped at n <= {cap}, got n = {n}")]
    MultiExchangeCapExceeded { n: u8, cap: u8 },
    #[error("exhaustive corpus would contain {0} tables (cap {1})")]
    CorpusTooLarge(u128, u128),
    #[error("the family is not an exchangeable base family")]
    NotABaseFamily,
    #[error("the cardinality profile is not concave")]
    NotConcaveSequence,
    #[error("the exchange set I must be contained in X \\ Y")]
    InvalidExchangeSet,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("witness does not fit the instance: {0}")]
    WitnessMismatch(String),
    #[error("axiom {0} is not supported by this operation")]
    UnsupportedAxiom(String),
    #[error("internal contradiction: {0}")]
    InternalContradiction(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, DcaError>;
