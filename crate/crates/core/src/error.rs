use alloc::string::String;
use core::fmt;

/// Errors raised by the algebraic layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Vector or matrix sizes do not match.
    Dimension {
        expected: usize,
        found: usize,
    },
    /// Structure constants violate antisymmetry or the Jacobi identity.
    NotLieAlgebra {
        reason: &'static str,
        indices: [usize; 4],
    },
    /// A subspace is not closed under the bracket.
    NotClosed {
        left: usize,
        right: usize,
    },
    /// A matrix does not respect the bracket (or is singular).
    NotAutomorphism {
        reason: &'static str,
        left: usize,
        right: usize,
    },
    /// The order check failed; `actual` is the true minimal order if it was
    /// found within the search bound.
    WrongOrder {
        claimed: u32,
        actual: Option<u32>,
    },
    /// An internal consistency check failed; indicates a bug.
    InvariantViolation(String),
    NotSemisimple,
    NotSimple,
    /// The proposed element is not in the center of the fixed subalgebra.
    NotCentral,
    Precondition(String),
    OutOfRange {
        what: &'static str,
        value: i64,
    },
    /// The requested construction needs values outside the scalar field
    /// (e.g. a root of unity that ℚ(√3) does not contain).
    Inexact {
        what: String,
    },
    /// A vector expected to lie in a span does not.
    NotInSpan,
}

impl Error {
    /// Stable name of the error kind, used in CLI diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Dimension { .. } => "DimensionError",
            Error::NotLieAlgebra { .. } => "NotLieAlgebraError",
            Error::NotClosed { .. } => "NotClosedError",
            Error::NotAutomorphism { .. } => "NotAutomorphismError",
            Error::WrongOrder { .. } => "WrongOrderError",
            Error::InvariantViolation(_) => "InvariantViolationError",
            Error::NotSemisimple => "NotSemisimpleError",
            Error::NotSimple => "NotSimpleError",
            Error::NotCentral => "NotCentralError",
            Error::Precondition(_) => "PreconditionError",
            Error::OutOfRange { .. } => "OutOfRangeError",
            Error::Inexact { .. } => "InexactError",
            Error::NotInSpan => "NotInSpanError",
        }
    }

    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::InvariantViolation(msg.into())
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.kind())?;
        match self {
            Error::Dimension { expected, found } => {
                write!(f, "expected dimension {}, found {}", expected, found)
            }
            Error::NotLieAlgebra { reason, indices } => {
                write!(f, "{} fails at basis indices {:?}", reason, indices)
            }
            Error::NotClosed { left, right } => {
                write!(
                    f,
                    "bracket of subspace vectors {} and {} leaves the subspace",
                    left, right
                )
            }
            Error::NotAutomorphism {
                reason,
                left,
                right,
            } => {
                write!(f, "{} (basis pair {}, {})", reason, left, right)
            }
            Error::WrongOrder {
                claimed,
                actual: Some(actual),
            } => {
                write!(
                    f,
                    "claimed order {} but minimal order is {}",
                    claimed, actual
                )
            }
            Error::WrongOrder {
                claimed,
                actual: None,
            } => {
                write!(f, "matrix does not have order {}", claimed)
            }
            Error::InvariantViolation(msg) => f.write_str(msg),
            Error::NotSemisimple => f.write_str("Killing form is degenerate"),
            Error::NotSimple => f.write_str("algebra is not simple"),
            Error::NotCentral => f.write_str("element is not central in the fixed subalgebra"),
            Error::Precondition(msg) => f.write_str(msg),
            Error::OutOfRange { what, value } => write!(f, "{} = {} is out of range", what, value),
            Error::Inexact { what } => write!(f, "{} is not representable exactly", what),
            Error::NotInSpan => f.write_str("vector does not lie in the span"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
