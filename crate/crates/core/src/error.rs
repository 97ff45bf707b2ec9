use thiserror::Error;

/// Errors raised across the exact and numeric layers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero element has no {0}")]
    ZeroElement(&'static str),
    #[error("inexact polynomial division: {0}")]
    InexactDivision(String),
    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },
    #[error("not a unit: {0}")]
    NonUnit(String),
    #[error("unsupported degree class combination: {0}")]
    UnsupportedClass(String),
    #[error("degenerate operation: {0}")]
    Degenerate(String),
    #[error("invalid triple: {0}")]
    InvalidTriple(String),
    #[error("incompatible exponent triples: {0}")]
    IncompatibleExponents(String),
    #[error("constant map has no ramification data")]
    ConstantMap,
    #[error("map does not have the expected isogeny shape: {0}")]
    Structure(String),
    #[error("argument outside the domain: {0}")]
    Domain(String),
    #[error("no branch-safe evaluation points: {0}")]
    BranchUnsafe(String),
}

pub type Result<T> = std::result::Result<T, Error>;
