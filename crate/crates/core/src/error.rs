use thiserror::Error;

/// Errors produced by the series calculus.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("semiring mismatch: {left} vs {right}")]
    DomainMismatch { left: String, right: String },

    #[error("{value} has no star in {semiring}")]
    NotStarrable {
        semiring: &'static str,
        value: String,
    },

    #[error("cannot parse {text:?} as a {semiring} scalar")]
    BadScalar {
        semiring: &'static str,
        text: String,
    },

    #[error("unknown semiring {0:?}")]
    UnknownSemiring(String),

    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("alphabet mismatch")]
    AlphabetMismatch,

    #[error("unknown letter {0:?}")]
    UnknownLetter(String),

    #[error("word of length {len} lies outside the window of length {max_len}")]
    OutOfWindow { len: usize, max_len: usize },

    #[error("series has a nonzero constant term; its star is not summable")]
    NotProper,

    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("constant term undefined for the starred subexpression {0}")]
    UndefinedConst(String),

    #[error("letter assignment does not match: {0}")]
    AssignmentMismatch(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("pivot {index} has no star")]
    UnstarrablePivot { index: usize },

    #[error("operation requires a field, {0} is not one")]
    NotAField(&'static str),

    #[error("operation cancelled")]
    Cancelled,

    #[error("level underflow: target level {0} is negative")]
    LevelUnderflow(i64),

    #[error("order {order} is smaller than the level change {shift}")]
    OrderTooSmall { order: usize, shift: i64 },

    #[error("continued-fraction product forms disagree at t^{0}")]
    FormsDisagree(usize),

    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
