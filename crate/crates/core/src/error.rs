use std::fmt;

/// Position-tagged failure from the polynomial reader.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("polynomial is not w-separable (Res_w(P, P'_w) = 0); pass it through squarefree_part_w first")]
    NotSeparable,

    #[error("unresolved at truncation K = {truncation}: {what}")]
    Unresolved { what: String, truncation: i64 },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("zero divisor encountered in Q[x]/({0}); the modulus is reducible")]
    ZeroDivisor(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
