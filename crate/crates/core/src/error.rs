use thiserror::Error;

use crate::lattice::Point;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Why a point sequence is not a simple closed curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CurveDefect {
    /// Consecutive points (mod `l`) that are not adjacent.
    Gap,
    /// Non-consecutive points that are adjacent.
    Chord,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("k(t, n) needs 1 <= t <= n, got t = {t}, n = {n}")]
    AdjacencyDomain { t: usize, n: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("points need at least one coordinate")]
    ZeroDimension,

    #[error("a digital image needs at least one point")]
    EmptyImage,

    #[error("a simple closed curve needs at least 4 points, got {0}")]
    CurveTooShort(usize),

    #[error("curve repeats a point at indices {i} and {j}")]
    DuplicateCurvePoint { i: usize, j: usize },

    #[error("not a simple closed curve: {defect:?} between indices {i} and {j}")]
    NotSimpleClosedCurve { i: usize, j: usize, defect: CurveDefect },

    #[error("point {0} is not in the image")]
    PointNotInImage(Point),

    #[error("{what} needs {expected} factors, got {found}")]
    Arity {
        what: &'static str,
        expected: &'static str,
        found: usize,
    },

    #[error("u = {u} is outside [1, {v}]")]
    URange { u: usize, v: usize },

    #[error("relation ground set does not match the map domain")]
    GroundMismatch,

    #[error("map is undefined at {0}")]
    MapUndefined(Point),

    #[error("map assigns two values to {0}")]
    MapConflict(Point),

    #[error("subset enumeration needs {needed} subsets, over the budget of {budget}")]
    SubsetBudget { needed: u128, budget: u128 },

    #[error("malformed group table: {0}")]
    MalformedTable(String),

    #[error("group carrier does not match the image points")]
    CarrierMismatch,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("no AP_{u} adjacency exists on the square")]
    NoApAdjacency { u: usize },

    #[error("window parameters out of range: {0}")]
    WindowDomain(String),

    #[error("fixture error: {0}")]
    Fixture(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
