use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0}")]
    Validation(String),

    #[error("genus mismatch: {left} vs {right}")]
    GenusMismatch { left: usize, right: usize },

    #[error("degree mismatch: expected weighted degree {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },

    #[error("invalid highest weight: {0}")]
    InvalidHighestWeight(String),

    #[error("invalid torsion class `{class}`: {reason}")]
    InvalidClass { class: String, reason: String },

    #[error("mass table line {line}: {reason}")]
    MassTable { line: usize, reason: String },

    #[error("mass table is missing {} class(es), first: {}", .0.len(), .0.first().map(String::as_str).unwrap_or(""))]
    MissingClasses(Vec<String>),

    #[error("character value is not a rational integer: {0}")]
    NonIntegralCharacter(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("registry error: {0}")]
    Registry(String),

    #[error("registry is complete only up to w1 = {bound}, but w1 = {w1} was requested")]
    RegistryIncomplete { w1: String, bound: String },

    #[error("invalid weight block: {0}")]
    InvalidBlock(String),

    #[error("spin branching: {0}")]
    Spin(String),

    #[error("no sign known for factor {factor} of {shape}; supply a sign file or use emit-both")]
    MissingSign { shape: String, factor: String },

    #[error("not a nonnegative combination of SL2 characters: {0}")]
    NotSl2Character(String),

    #[error("Hodge bigrading violation: {0}")]
    Hodge(String),

    #[error("unknown reference table `{0}`")]
    UnknownTable(String),

    #[error("cache: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
