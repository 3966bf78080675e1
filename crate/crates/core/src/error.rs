use thiserror::Error;

/// Errors raised by the algebra routines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("field of order {0} is not supported (at most 256 elements)")]
    FieldTooLarge(u64),

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("not a {p}-group (order {order})")]
    NotPGroup { p: u32, order: u128 },

    #[error("{what} exceeds cap: {actual} > {limit}")]
    CapExceeded {
        what: &'static str,
        limit: u128,
        actual: u128,
    },

    #[error("field GF({p}^{m}) does not split {what}; try field degree {suggested}")]
    NotSplittingField {
        p: u32,
        m: u32,
        suggested: u32,
        what: String,
    },

    #[error("no isomorphism: {0}")]
    NoIsomorphism(String),

    #[error("hypothesis failed: {0}")]
    Hypothesis(String),

    #[error("module is decomposable; decompose it first")]
    Decomposable,

    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
