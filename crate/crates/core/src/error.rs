use thiserror::Error;

use crate::algebra::AlgebraKind;
use crate::plane::{Chart, PlaneKind};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("algebra mismatch: {left:?} vs {right:?}")]
    KindMismatch { left: AlgebraKind, right: AlgebraKind },

    #[error("element is null or zero (|a|^2 = {norm_sq:e}) and has no inverse")]
    NonInvertible { norm_sq: f64 },

    #[error("chart index {0} does not exist (expected 1, 2 or 3)")]
    UnknownChart(u8),

    #[error("point is not in the overlap of charts {from} and {to}")]
    OverlapViolation { from: Chart, to: Chart },

    #[error("triple has no admissible pivot producing a valid {0} point")]
    NotRepresentable(PlaneKind),

    #[error("coordinates lie outside chart {chart} of {kind}")]
    OutsideDomain { kind: PlaneKind, chart: Chart },

    #[error("tangent vector is null (g(v,v) = {0:e})")]
    NullVector(f64),

    #[error("{0}")]
    InvalidStep(String),

    #[error("no extension formula applies to the point (internal consistency failure)")]
    NoApplicableRegion,

    #[error("parse error: {0}")]
    Parse(String),
}
