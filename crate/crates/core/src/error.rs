use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("zero polynomial has no finite root set")]
    ZeroPolynomial,
    #[error("negative input: {0}")]
    NegativeInput(String),
    #[error("{what} out of range: {value}")]
    OutOfRange { what: &'static str, value: String },
    #[error("cannot mix sqrt({0}) and sqrt({1})")]
    FieldMismatch(u64, u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("value too large for exact routine: {0}")]
    Overflow(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("degenerate tile: {0}")]
    DegenerateTile(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("outer triangle has no right angle")]
    NotRightTriangle,
    #[error("not a primitive Pythagorean triple: {0}")]
    NotPythagorean(String),
    #[error("malformed tiling: {0}")]
    MalformedTiling(String),
    #[error("not colorable: {}", crate::constructions::describe(.0))]
    NotColorable(Vec<crate::constructions::Hypothesis>),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
