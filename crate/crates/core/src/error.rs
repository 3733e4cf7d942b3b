use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("mixed radicands: sqrt({0}) and sqrt({1})")]
    MixedRadicand(u64, u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid field size {0}")]
    InvalidFieldSize(u64),
    #[error("trace {trace} violates Weil bound for q = {q}")]
    WeilBound { q: u64, trace: i64 },
    #[error("trace {trace} does not occur over F_{q}")]
    TraceNotAdmissible { q: u64, trace: i64 },
    #[error("not a valid Weil polynomial: {0}")]
    InvalidWeilPolynomial(String),
    #[error("inconsistent field size: expected {expected}, found {found}")]
    InconsistentFieldSize { expected: u64, found: u64 },
    #[error("no constraint: angle set is empty")]
    NoConstraint,
    #[error("hypothesis Re T(e(theta)) >= 1 violated at theta={0}")]
    HypothesisViolated(String),
    #[error("verification inconclusive at theta={0}")]
    Inconclusive(String),
    #[error("negative multiplier at row {0}")]
    NegativeMultiplier(usize),
    #[error("combination does not dominate objective")]
    NotDominating,
    #[error("multiplier count {found} does not match row count {expected}")]
    MultiplierCount { expected: usize, found: usize },
    #[error("increase D: system does not bound the genus")]
    Unbounded,
    #[error("system is infeasible")]
    Infeasible,
    #[error("angle index search exceeded {0} steps")]
    AngleSearchLimit(u64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
