use core::fmt;

/// Errors raised by the core engine.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A tensor product would exceed the 4-qubit (16-dimensional) limit.
    DimensionOverflow { dim: usize },
    /// Operand dimensions do not agree.
    DimensionMismatch { expected: usize, found: usize },
    /// An operator dimension is not 2^n with n in 1..=4.
    InvalidDimension(usize),
    /// A precondition on an argument failed.
    InvalidArgument(&'static str),
    /// The operator is not Hermitian within tolerance.
    NotHermitian { deviation: f64 },
    /// The operator is not unitary within tolerance.
    NotUnitary { deviation: f64 },
    /// The matrix is not a valid density matrix.
    InvalidState(&'static str),
    /// No cooling regime exists for the requested bath temperatures.
    NoCoolingRegime,
    /// The requested bias can never be reached from the given start.
    UnreachableTarget,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionOverflow { dim } => {
                write!(
                    f,
                    "dimension overflow: {dim} exceeds the 16-dimensional limit"
                )
            }
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::InvalidDimension(d) => write!(f, "invalid operator dimension {d}"),
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Error::NotHermitian { deviation } => {
                write!(f, "operator is not Hermitian (max deviation {deviation:e})")
            }
            Error::NotUnitary { deviation } => {
                write!(f, "operator is not unitary (max deviation {deviation:e})")
            }
            Error::InvalidState(msg) => write!(f, "invalid density matrix: {msg}"),
            Error::NoCoolingRegime => {
                write!(f, "no cooling regime: E2/T2 must exceed E3/T3")
            }
            Error::UnreachableTarget => write!(f, "target bias cannot be reached by compression"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
