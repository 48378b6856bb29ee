use thiserror::Error;

/// Errors raised across the workbench.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid number of truth values d={0} (need 2 <= d <= 255)")]
    InvalidArity(u32),

    #[error("truth level {level} is out of range for d={d}")]
    LevelOutOfRange { level: u32, d: u32 },

    #[error("arity mismatch: L_{left} value combined with L_{right} value")]
    ArityMismatch { left: u8, right: u8 },

    #[error("malformed gate table: {0}")]
    Table(String),

    #[error("gate shape violation: {0}")]
    Shape(String),

    #[error("unknown gate `{0}`")]
    UnknownGate(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("gate is not injective: inputs {first:?} and {second:?} share an output")]
    NotInjective { first: Vec<u8>, second: Vec<u8> },

    #[error("invalid family parameter: {0}")]
    FamilyParameter(String),

    #[error("rules {rules:?} disagree on input triple {triple:?}")]
    IllDefined { triple: [u8; 3], rules: Vec<usize> },

    #[error("transform error: {0}")]
    Transform(String),

    #[error("search space too large: about {estimate:.3e} candidates (limit {limit:.0e})")]
    Infeasible { estimate: f64, limit: f64 },

    #[error("expression error: {0}")]
    Expr(String),

    #[error("algebra error: {0}")]
    Algebra(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
