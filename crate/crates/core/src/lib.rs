//! Octonionic and para-octonionic plane geometries.
//!
//! The four planes handled here are the octonionic projective plane, the
//! para-octonionic projective plane, the indefinite plane of signature (8,8)
//! and the octonionic hyperbolic plane. For each one the crate evaluates
//! metrics in all three affine charts, applies reflections and rotations,
//! computes curvature at the base point and verifies the special Osserman
//! structure of the Jacobi operators.

pub mod algebra;
pub mod curvature;
pub mod error;
pub mod fd;
pub mod isometry;
pub mod metric;
pub mod osserman;
pub mod plane;
pub mod report;
pub mod sampling;
pub mod tolerances;

pub use algebra::{AlgebraKind, HyperNumber};
pub use error::{Error, Result};
pub use isometry::{IsometryComposition, IsometryStep};
pub use metric::{CouplingBlock, MetricMatrix};
pub use plane::{Chart, ChartPoint, HomogeneousTriple, PlaneKind};
pub use sampling::{Sampler, TangentVector};
