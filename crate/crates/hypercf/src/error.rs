use std::fmt;

/// Error type shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Operands come from different field contexts.
    CtxMismatch,
    /// `p` is not prime, or a modulus failed validation.
    BadField(String),
    /// Division by the zero polynomial.
    DivisionByZero,
    /// Inversion of zero (field element or series indistinguishable from zero).
    NonInvertible,
    /// An exponent that must be a power of `p` is not one.
    NotPowerOfP { value: u64, p: u64 },
    /// A family spec violates one of its preconditions.
    InvalidSpec(String),
    /// A division that the family formulas guarantee to be exact was not.
    InexactDivision(String),
    /// Text input could not be parsed. `col` is a 0-based byte column.
    Parse { msg: String, col: usize },
    /// Requested precision exceeds what the value can support.
    PrecisionUnsupported { requested: i64, achievable: i64 },
    /// An operation needs more input terms than were supplied.
    ShortInput { needed: usize, got: usize },
    /// A kernel report that must be closed is not.
    NotClosed(String),
    /// A morphism is not prolongable on the requested letter.
    NotProlongable(char),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::CtxMismatch => write!(f, "field context mismatch"),
            Error::BadField(m) => write!(f, "invalid field: {m}"),
            Error::DivisionByZero => write!(f, "division by zero polynomial"),
            Error::NonInvertible => write!(f, "inversion of zero"),
            Error::NotPowerOfP { value, p } => {
                write!(f, "{value} is not a power of the characteristic {p}")
            }
            Error::InvalidSpec(m) => write!(f, "invalid spec: {m}"),
            Error::InexactDivision(m) => write!(f, "inexact division: {m}"),
            Error::Parse { msg, col } => write!(f, "parse error at column {col}: {msg}"),
            Error::PrecisionUnsupported { requested, achievable } => write!(
                f,
                "requested precision T^{requested} not supported; achievable is T^{achievable}"
            ),
            Error::ShortInput { needed, got } => {
                write!(f, "input too short: need {needed} terms, got {got}")
            }
            Error::NotClosed(m) => write!(f, "kernel not closed: {m}"),
            Error::NotProlongable(c) => write!(f, "morphism not prolongable on '{c}'"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
