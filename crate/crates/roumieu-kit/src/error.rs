//! Crate-wide error type.

use std::fmt;

/// Errors reported by sequence, matrix, weight-function and seminorm
/// operations.
#[derive(Debug)]
pub enum Error {
    /// A parameter is outside its admissible range (depth too small,
    /// non-positive scale, decreasing schedule, ...).
    InvalidArgument(String),
    /// A sequence value is non-positive or non-finite where positivity is
    /// required.
    InvalidSequence(String),
    /// A tabulated prefix is too short for the requested index.
    DepthExceeded { requested: usize, available: usize },
    /// The conjugate grid does not reach the requested argument.
    ExtendGrid { y: f64, y_max: f64 },
    /// The truncation depth is too shallow for the requested evaluation
    /// point (the maximising index escaped the prefix).
    ExtendDepth { at: f64, depth: usize },
    /// The diagonal witness construction could not start a block for the
    /// given row within the checked prefix.
    BlockNotFound { row: usize, depth: usize },
    /// A constant of the sup-type witness was maximised at the end of the
    /// prefix, so the finiteness hypothesis is not numerically supported.
    BoundaryAttained { row: usize, depth: usize },
    /// The interpolation construction has no room to work: the two inputs
    /// are not separated by a genuine o-relation on the grid.
    NoGap(String),
    /// A constructed object failed its own a-posteriori validation.
    ConstructionFailed(String),
    /// Input file or JSON structure could not be parsed; the message names
    /// the offending field.
    Parse(String),
    Io(std::io::Error),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Error::InvalidSequence(msg) => write!(f, "invalid sequence: {msg}"),
            Error::DepthExceeded { requested, available } => write!(
                f,
                "depth exceeded: index {requested} requested but only 0..={available} available"
            ),
            Error::ExtendGrid { y, y_max } => write!(
                f,
                "extend grid: conjugate requested at y = {y} beyond grid end {y_max}"
            ),
            Error::ExtendDepth { at, depth } => write!(
                f,
                "extend depth: maximising index reached the truncation depth {depth} at t = {at}"
            ),
            Error::BlockNotFound { row, depth } => write!(
                f,
                "block not found: no qualifying index for row {row} within depth {depth}"
            ),
            Error::BoundaryAttained { row, depth } => write!(
                f,
                "boundary attained: constant for row {row} maximised at the prefix end {depth}"
            ),
            Error::NoGap(msg) => write!(f, "no gap: {msg}"),
            Error::ConstructionFailed(msg) => write!(f, "construction failed: {msg}"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
            Error::Io(e) => write!(f, "io error: {e}"),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Io(e) => Some(e),
            _ => None,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
