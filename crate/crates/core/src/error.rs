use thiserror::Error;

use crate::replay::ReplayReport;

/// Reasons a multiplication table fails to describe a group.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableDefect {
    #[error("table is empty")]
    Empty,
    #[error("row {row} has length {len}, expected {expected}")]
    RaggedRow {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("entry ({row}, {col}) = {value} is out of range")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
    },
    #[error("row {0} is not a permutation of the elements")]
    RowNotPermutation(usize),
    #[error("column {0} is not a permutation of the elements")]
    ColumnNotPermutation(usize),
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("associativity fails for ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("not a group: {0}")]
    NotAGroup(TableDefect),

    #[error("group order exceeds the configured bound of {limit}")]
    SizeLimitExceeded { limit: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("generators have mismatched degrees ({0} vs {1})")]
    DegreeMismatch(usize, usize),

    #[error("invalid action: {0}")]
    InvalidAction(String),

    #[error("invalid labels: {0}")]
    InvalidLabels(String),

    #[error("isomorphism search exhausted its budget of {budget} nodes")]
    SearchBudgetExceeded { budget: u64 },

    #[error("unsupported c value {c}: {reason}")]
    UnsupportedC { c: u64, reason: String },

    #[error("invalid target data: {0}")]
    InvalidSpec(String),

    #[error("subgroup of order {order} does not have index 2 in a group of order {parent}")]
    NotIndexTwo { order: usize, parent: usize },

    #[error("target data carries no parity labels")]
    MissingParities,

    #[error("group does not satisfy the required properties; first failure: ({0})")]
    Precondition(char),

    #[error("property violation: {0}")]
    PropertyViolation(String),

    #[error("replay assertion `{assertion}` failed")]
    ReplayFailed {
        assertion: String,
        report: Box<ReplayReport>,
    },

    #[error("block family is not stable under conjugation by element {0}")]
    NotStable(usize),

    #[error("unsupported parameters for {name}: {reason}")]
    UnsupportedParams { name: String, reason: String },

    #[error("uniqueness violated: {0}")]
    UniquenessViolated(String),

    #[error("catalog hash mismatch for `{name}`: stored {stored}, rebuilt {rebuilt}")]
    HashMismatch {
        name: String,
        stored: String,
        rebuilt: String,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
