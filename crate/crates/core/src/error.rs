use core::fmt;

use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Errors raised by the metric, chart and path routines.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A coordinate, length or area left the admissible open domain.
    Domain(String),
    /// Arguments are well-formed values but violate an operation's precondition.
    InvalidArgument(String),
    /// Two points were built over different triangulations.
    TriangulationMismatch,
    /// Slot values disagree on the length of a shared edge.
    InconsistentPoint { edge: usize, residual: f64 },
    /// A planar development is not a strictly convex polygon.
    NotConvex { vertex: usize, cross: f64 },
    /// An iterative numerical routine ran out of budget.
    NumericalFailure { reason: &'static str, estimate: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Error::TriangulationMismatch => f.write_str("points belong to different triangulations"),
            Error::InconsistentPoint { edge, residual } => {
                write!(f, "edge {edge} has inconsistent lengths (residual {residual:e})")
            }
            Error::NotConvex { vertex, cross } => {
                write!(f, "development is not strictly convex at vertex {vertex} (cross product {cross:e})")
            }
            Error::NumericalFailure { reason, estimate } => {
                write!(f, "numerical failure: {reason} (partial estimate {estimate})")
            }
        }
    }
}

impl core::error::Error for Error {}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
