use alloc::string::String;

use thiserror::Error;

use crate::monomial::Monomial;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseMonomialError {
    #[error("empty monomial")]
    Empty,
    #[error("unexpected character {found:?} at column {column}")]
    Unexpected { column: usize, found: char },
    #[error("variable {found:?} at column {column} is out of order (expected x, y, z)")]
    OutOfOrder { column: usize, found: char },
    #[error("missing exponent after '^' at column {column}")]
    MissingExponent { column: usize },
    #[error("exponent starting at column {column} does not fit in 32 bits")]
    ExponentOverflow { column: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    #[error("side length must be at least 1")]
    ZeroSide,
    #[error("region is not balanced ({up} up, {down} down triangles)")]
    Unbalanced { up: usize, down: usize },
    #[error("region is not tileable")]
    NotTileable,
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("permanent of a {n}x{n} matrix exceeds the size cap {cap}")]
    Oversize { n: usize, cap: usize },
    #[error("not a tiling of the region: {0}")]
    InvalidTiling(String),
    #[error("invalid lozenge cycle: {0}")]
    InvalidCycle(String),
    #[error("malformed path family: {0}")]
    MalformedTiling(String),
    #[error("{0} is not a puncture of the region")]
    UnknownPuncture(Monomial),
    #[error("corner puncture {0} is never resolved")]
    CornerPuncture(Monomial),
    #[error("puncture {0} is overlapped by {1}; resolve their covering region instead")]
    Overlapped(Monomial, Monomial),
    #[error("punctures {0} and {1} do not overlap")]
    NotOverlapping(Monomial, Monomial),
    #[error("no admissible {0} splitting chain")]
    NoChain(&'static str),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
