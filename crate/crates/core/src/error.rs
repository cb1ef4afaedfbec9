use thiserror::Error;

/// Errors shared by all analyses in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonoidError {
    #[error("multiplication table is not associative: ({i}*{j})*{k} != {i}*({j}*{k})")]
    NotAssociative { i: usize, j: usize, k: usize },
    #[error("element {witness} is not a two-sided identity")]
    NotIdentity { witness: usize },
    #[error("index {index} out of range for order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("enumeration exceeded the cap of {cap} elements (at least {found} found)")]
    SizeCapExceeded { cap: usize, found: usize },
    #[error("generator degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("element {element} is not idempotent")]
    NotIdempotent { element: usize },
    #[error("idempotents {e} and {f} are not J-equivalent")]
    NotJEquivalent { e: usize, f: usize },
    #[error("monoid is not right Fountain (tilde-L class of {witness} has no idempotent)")]
    NotRightFountain { witness: usize },
    #[error("monoid is not left Fountain (tilde-R class of {witness} has no idempotent)")]
    NotLeftFountain { witness: usize },
    #[error("monoid is not in ER{}", witness_pair(.witness))]
    NotER { witness: Option<(usize, usize)> },
    #[error("monoid is not a block group")]
    NotBlockGroup,
    #[error("monoid is not aperiodic (nontrivial maximal subgroup at {witness})")]
    NotAperiodic { witness: usize },
    #[error("hypothesis failed: {condition}")]
    HypothesisFailed { condition: String },
    #[error("precondition failed: {hypothesis}")]
    PreconditionFailed { hypothesis: String },
    #[error("internal disagreement between two independent computations: {context}")]
    InternalDisagreement { context: String },
    #[error("group of order {order} exceeds the cap {cap}")]
    GroupTooLarge { order: usize, cap: usize },
    #[error("the given matrices do not satisfy the group module laws")]
    NotAModule,
    #[error("the given matrices do not form a representation")]
    NotARepresentation,
    #[error("arithmetic domain mismatch: {context}")]
    DomainMismatch { context: String },
    #[error("parse error at line {line}, column {col}: {msg}")]
    ParseError {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("report is missing section `{name}`")]
    MissingSection { name: String },
}

fn witness_pair(w: &Option<(usize, usize)>) -> String {
    match w {
        Some((a, b)) => format!(" (witness pair {a}, {b})"),
        None => String::new(),
    }
}

pub type Result<T> = std::result::Result<T, MonoidError>;
