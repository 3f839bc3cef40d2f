//! Metric components in chart coordinates.
//!
//! In chart `Uk` with pivot sign `sp` and coordinate slot signs `su`, `sv`,
//! every kind's metric has the same shape:
//!
//! ```text
//!         η / D^2 * | su (sp + sv|v|^2) G        σ P            |
//!                   | σ P^T                      sv (sp + su|u|^2) G |
//!
//! D = sp + su|u|^2 + sv|v|^2,   σ = -su sv,   P_ij = <(u conj(v)) x_j, x_i>
//! ```
//!
//! with `η = -1` for the hyperbolic plane and `+1` otherwise. In chart 1 of
//! the projective planes this is the familiar `(1+|v|^2)G, (1+|u|^2)G, A`
//! layout with `A = -P`; for the indefinite plane the off-diagonal block is
//! `+P`, and for the hyperbolic plane `η` and the slot signs make it `+P` too.

use nalgebra::{SMatrix, SymmetricEigen};

use crate::algebra::{AlgebraKind, HyperNumber};
use crate::error::{Error, Result};
use crate::fd;
use crate::plane::{self, chart_form, Chart, ChartPoint, PlaneKind};
use crate::tolerances::SIGNATURE_ZERO;

pub type MetricMatrix = SMatrix<f64, 16, 16>;
pub type CouplingBlock = SMatrix<f64, 8, 8>;

/// Diagonal `G = diag(ε1..ε8)`.
pub fn sign_matrix(algebra: AlgebraKind) -> CouplingBlock {
    CouplingBlock::from_diagonal(&nalgebra::SVector::<f64, 8>::from(*algebra.signs()))
}

/// `P_ij = <(u conj(v)) x_j, x_i>`.
fn left_multiplication_block(u: &HyperNumber, v: &HyperNumber) -> CouplingBlock {
    let algebra = u.kind();
    let w = *u * v.conj();
    let signs = algebra.signs();
    let mut p = CouplingBlock::zeros();
    for j in 0..8 {
        let col = w * HyperNumber::basis(algebra, j);
        for i in 0..8 {
            p[(i, j)] = signs[i] * col.coeffs()[i];
        }
    }
    p
}

/// The coupling block `A` of the chart-1 metric, without its denominator.
///
/// `A_ij = -<(u conj(v)) x_j, x_i>` except for the hyperbolic plane, where
/// the sign is `+`. The indefinite plane's metric carries `-A`.
pub fn coupling_block(kind: PlaneKind, u: &HyperNumber, v: &HyperNumber) -> Result<CouplingBlock> {
    for x in [u, v] {
        if x.kind() != kind.algebra() {
            return Err(Error::KindMismatch { left: kind.algebra(), right: x.kind() });
        }
    }
    let p = left_multiplication_block(u, v);
    Ok(match kind {
        PlaneKind::Oh2 => p,
        _ => -p,
    })
}

/// Metric components without the domain check.
pub(crate) fn metric_unchecked(kind: PlaneKind, chart: Chart, u: &HyperNumber, v: &HyperNumber) -> MetricMatrix {
    let s = kind.slot_signs();
    let sp = s[chart.pivot()];
    let [su, sv] = chart.coordinate_slots().map(|i| s[i]);
    let eta = kind.metric_sign();
    let (nu, nv) = (u.norm_sq(), v.norm_sq());
    let d = chart_form(kind, chart, u, v);
    let scale = eta / (d * d);
    let g = sign_matrix(kind.algebra());
    let off = left_multiplication_block(u, v) * (-su * sv * scale);

    let mut m = MetricMatrix::zeros();
    m.fixed_view_mut::<8, 8>(0, 0).copy_from(&(g * (su * (sp + sv * nv) * scale)));
    m.fixed_view_mut::<8, 8>(8, 8).copy_from(&(g * (sv * (sp + su * nu) * scale)));
    m.fixed_view_mut::<8, 8>(0, 8).copy_from(&off);
    m.fixed_view_mut::<8, 8>(8, 0).copy_from(&off.transpose());
    m
}

/// Metric components at a chart point.
pub fn metric_matrix(p: &ChartPoint) -> Result<MetricMatrix> {
    if !plane::chart_contains(p.kind, p.chart, &p.u, &p.v)? {
        return Err(Error::OutsideDomain { kind: p.kind, chart: p.chart });
    }
    Ok(metric_unchecked(p.kind, p.chart, &p.u, &p.v))
}

/// Metric at the base point: `block-diag(G, G)` or `block-diag(G, -G)`.
pub fn origin_metric(kind: PlaneKind) -> MetricMatrix {
    metric_unchecked(kind, Chart::U1, &HyperNumber::zero(kind.algebra()), &HyperNumber::zero(kind.algebra()))
}

/// Metric as a closure of raw chart coordinates, for differentiation.
pub(crate) fn metric_fn(kind: PlaneKind, chart: Chart) -> impl Fn(&[f64; 16]) -> MetricMatrix {
    move |x| {
        let (u, v) = plane::split(kind.algebra(), x);
        metric_unchecked(kind, chart, &u, &v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

/// Eigenvalue sign counts with a zero threshold relative to the max-norm.
pub fn signature(m: &MetricMatrix) -> Signature {
    let eig = SymmetricEigen::new(*m);
    let threshold = SIGNATURE_ZERO * m.amax().max(f64::MIN_POSITIVE);
    let mut sig = Signature { positive: 0, negative: 0, zero: 0 };
    for &e in eig.eigenvalues.iter() {
        if e > threshold {
            sig.positive += 1;
        } else if e < -threshold {
            sig.negative += 1;
        } else {
            sig.zero += 1;
        }
    }
    sig
}

/// Smallest absolute eigenvalue relative to the largest, a conditioning
/// measure used for the non-degeneracy checks.
pub fn relative_min_eigenvalue(m: &MetricMatrix) -> f64 {
    let eig = SymmetricEigen::new(*m);
    let abs = eig.eigenvalues.map(f64::abs);
    abs.min() / abs.max()
}

/// `max |J^T M(T p) J - M(p)|` for the transition `T` from `p.chart` to `to`.
pub fn pullback_deviation(p: &ChartPoint, to: Chart, step: f64) -> Result<f64> {
    let from = p.chart;
    let kind = p.kind;
    if from == to {
        metric_matrix(p)?;
        return Ok(0.0);
    }
    let image = plane::to_chart(p, to)?;
    let map = |x: &[f64; 16]| {
        let (u, v) = plane::split(kind.algebra(), x);
        let (u2, v2) = plane::transition(kind, from, to, &u, &v)?;
        Ok(plane::join(&u2, &v2))
    };
    let jac = fd::jacobian(map, &p.coords(), step)?;
    let pulled = jac.transpose() * metric_matrix(&image)? * jac;
    Ok((pulled - metric_matrix(p)?).amax())
}
