use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Two objects disagree on the number of variables / qubits.
    DimensionMismatch { expected: usize, found: usize },
    /// An operation over all `2^n` states was requested above its cap.
    TooManyQubits { n: usize, cap: usize },
    /// A precondition on an argument failed.
    InvalidArgument(String),
    /// Sampling found no state with a strictly lower-cost neighbor.
    NoDescendingTransitions,
    /// A spectrum with `C_max == C_min` where a range is needed.
    DegenerateSpectrum,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected} variables, found {found}")
            }
            Error::TooManyQubits { n, cap } => {
                write!(f, "{n} qubits exceeds the cap of {cap} for this operation")
            }
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Error::NoDescendingTransitions => write!(f, "no descending transitions sampled"),
            Error::DegenerateSpectrum => write!(f, "degenerate spectrum (C_max == C_min)"),
        }
    }
}

impl core::error::Error for Error {}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
