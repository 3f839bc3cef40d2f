//! Every numerical threshold used by the library and the verification suites.
//!
//! Residual thresholds assume inputs at unit scale (coefficients in `[-1, 1]`).

// Algebra

/// Algebraic identities of degree <= 4 on random inputs.
pub const ALGEBRA_IDENTITY: f64 = 1e-10;
/// `| |a|^2 |` at or below this is treated as null (no inverse).
pub const NULL_NORM: f64 = 1e-9;

// Plane

/// Componentwise equality of normalized points, relative to `max(1, |coord|)`.
pub const POINT_EQUALITY: f64 = 1e-9;
/// Round trip through a pair of chart transitions.
pub const TRANSITION_ROUND_TRIP: f64 = 1e-9;
/// Homogeneous form value a point needs before it counts as inside a chart.
pub const DOMAIN_MARGIN: f64 = 0.0;

// Metric

pub const METRIC_SYMMETRY: f64 = 1e-14;
pub const COUPLING_IDENTITY: f64 = 1e-10;
pub const PULLBACK_STEP: f64 = 1e-5;
pub const PULLBACK_DEVIATION: f64 = 1e-7;
/// Eigenvalues below this times the matrix max-norm count as zero.
pub const SIGNATURE_ZERO: f64 = 1e-9;

// Isometry

pub const STEP_CONSTRAINT: f64 = 1e-12;
pub const NORM_CONSERVATION: f64 = 1e-10;
pub const INVOLUTION: f64 = 1e-9;
pub const ROTATION_EXAMPLE: f64 = 1e-10;
pub const HOMOGENEITY: f64 = 1e-8;
pub const ISOMETRY_PULLBACK: f64 = 1e-6;
/// Denominators of the extension formulas must exceed this to be used.
pub const EXTENSION_DENOMINATOR: f64 = 1e-9;
/// Two routes for the same global map must agree this closely.
pub const ROUTE_AGREEMENT: f64 = 1e-9;

// Curvature

pub const SECOND_JET_STEP: f64 = 1e-3;
pub const FIRST_JET_STEP: f64 = 1e-4;
pub const SECOND_JET: f64 = 1e-5;
pub const FIRST_JET: f64 = 1e-7;
pub const CURVATURE_NUMERIC: f64 = 1e-5;
pub const LISTED_COMPONENT: f64 = 1e-6;
pub const CLOSED_FORM_SYMMETRY: f64 = 1e-10;
pub const NUMERIC_SYMMETRY: f64 = 1e-8;
/// Step for the metric derivatives feeding the general-point Christoffels.
pub const GENERAL_POINT_STEP: f64 = 1e-4;
pub const GENERAL_POINT_SPECTRUM: f64 = 2e-3;

// Jacobi operator

pub const JACOBI_FORM: f64 = 1e-9;
pub const JACOBI_KERNEL: f64 = 1e-10;
pub const EIGENVALUE: f64 = 1e-8;
pub const EIGENVALUE_IMAGINARY: f64 = 1e-9;
pub const EIGENSPACE_RANK: f64 = 1e-8;
pub const EIGENVECTOR: f64 = 1e-9;
pub const OSSERMAN: f64 = 1e-8;
pub const WITNESS: f64 = 1e-10;

// Sampling

/// Sampled points keep the chart's homogeneous form at least this positive.
pub const SAMPLE_MARGIN: f64 = 0.2;
/// Sampled overlap points keep the target pivot norm at least this large.
pub const OVERLAP_PIVOT: f64 = 0.5;
/// Sampled non-null tangent vectors have `|g(v,v)|` at least this before scaling.
pub const NON_NULL_MARGIN: f64 = 0.1;
/// Sampled ball points of the hyperbolic plane stay inside this squared radius.
pub const BALL_RADIUS_SQ: f64 = 0.8;
