use core::fmt;

/// Failure modes shared by every kernel in the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A precondition on an argument was violated.
    InvalidArgument(&'static str),
    /// Mesh bounding box has zero extent on every axis.
    DegenerateGeometry,
    /// The operation needs at least one occupied cell.
    EmptySet,
    /// Too few usable points for a regression.
    InsufficientData { usable: usize },
    /// The request would exceed the desk-scale cell budget.
    ResourceLimit { cells: u128, limit: u128 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Error::DegenerateGeometry => f.write_str("degenerate geometry: bounding box has zero extent"),
            Error::EmptySet => f.write_str("empty set: no occupied cells, dimension is undefined"),
            Error::InsufficientData { usable } => {
                write!(f, "insufficient data: {usable} usable point(s), need at least 2 distinct scales")
            }
            Error::ResourceLimit { cells, limit } => {
                write!(f, "resource limit: {cells} cells requested, limit is {limit}")
            }
        }
    }
}

impl core::error::Error for Error {}
