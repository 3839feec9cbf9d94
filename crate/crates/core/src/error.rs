//! Error types shared across the engine.

use thiserror::Error;

/// Syntax-level failure with source location.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("{message} at line {line}, column {col}")]
pub struct ParseError {
    pub message: String,
    pub line: u32,
    pub col: u32,
}

impl ParseError {
    pub fn new(message: impl Into<String>, line: u32, col: u32) -> Self {
        ParseError { message: message.into(), line, col }
    }
}

/// Runtime failures of resolution, sampling and inference.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum EngineError {
    #[error("floundering: negative literal \\+ {goal} selected with unbound variables")]
    FloundedNegation { goal: String },

    #[error("probabilistic fact {atom} called with unbound term arguments")]
    NongroundFactCall { atom: String },

    #[error("unbound parameter in density for {atom}")]
    UnboundDensityParameter { atom: String },

    #[error("invalid density parameters for {atom}: {reason}")]
    InvalidParameter { atom: String, reason: String },

    #[error("arithmetic variable {name} is unbound")]
    UnboundArithVariable { name: String },

    #[error("division by zero in arithmetic expression")]
    DivisionByZero,

    #[error("term argument of {atom} holds a real value; random variables must be keyed by logical terms")]
    ContinuousKey { atom: String },

    #[error("exact inference requires a purely discrete program; {count} density fact(s) present")]
    ProgramHasDensityFacts { count: usize },

    #[error("query {query} is not ground-instantiable: {reason}")]
    NonGroundableQuery { query: String, reason: String },

    #[error("ground fact universe has {facts} instances, above the limit of {limit}")]
    UniverseTooLarge { facts: usize, limit: usize },

    #[error("world evaluation exceeded the depth bound")]
    WorldDepthExceeded,

    #[error("all {requested} samples exceeded the depth bound")]
    AllSamplesDepthExceeded { requested: u64 },

    #[error("inconsistent composite choice: {atom} selected both ways")]
    InconsistentChoice { atom: String },
}
