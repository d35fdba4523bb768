use std::fmt;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid modulus: {0}")]
    ModulusInvalid(String),

    #[error("division by zero")]
    DivisionByZero,

    /// An arithmetic self-check failed. Never expected on valid input.
    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("evaluation at index {input} returned {output}, outside [0, {size})")]
    EvalRange { input: u64, output: u64, size: u64 },

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("bad parameter: {0}")]
    Param(String),

    #[error("invalid exponent expression: {0}")]
    ExprInvalid(String),

    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Syntax error with the byte offset where parsing stopped and the tokens
/// that would have been accepted there.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub offset: usize,
    pub expected: Vec<&'static str>,
    pub found: Option<char>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: expected ", self.offset)?;
        match self.expected.as_slice() {
            [] => write!(f, "nothing")?,
            [one] => write!(f, "{one}")?,
            many => write!(f, "one of {}", many.join(", "))?,
        }
        match self.found {
            Some(c) => write!(f, ", found {c:?}"),
            None => write!(f, ", found end of input"),
        }
    }
}
