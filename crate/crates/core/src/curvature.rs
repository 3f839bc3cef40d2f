//! Curvature at the base point and at general points.
//!
//! Frame indices run over `0..16`: `e_i = ∂/∂u_i` is index `i`, `f_i = ∂/∂v_i`
//! is index `8 + i`. Tensors follow the convention
//!
//! ```text
//! R_{αβγ}^δ = ∂_β Γ^δ_{αγ} - ∂_α Γ^δ_{βγ} + Γ^ε_{αγ} Γ^δ_{βε} - Γ^ε_{βγ} Γ^δ_{αε},
//! R_{αβγδ}  = g_{δε} R_{αβγ}^ε
//! ```
//!
//! which at the base point, where the first jets vanish, reduces to
//! `½[g_{βγ;αδ} + g_{αδ;βγ} - g_{αγ;βδ} - g_{βδ;αγ}]`.

use nalgebra::{Complex, Schur};

use crate::algebra::HyperNumber;
use crate::error::{Error, Result};
use crate::fd::{self, Matrix16};
use crate::metric::{metric_fn, metric_matrix};
use crate::plane::{Chart, ChartPoint, PlaneKind};
use crate::sampling::TangentVector;
use crate::tolerances::{EIGENVALUE_IMAGINARY, GENERAL_POINT_STEP, NULL_NORM};

const N: usize = 16;
const SCHUR_DEFLATION: f64 = 1e-12;
const SCHUR_MAX_ITER: usize = 10_000;

/// Second partials of the metric at the base point.
#[derive(Debug, Clone)]
pub struct JetTable {
    pub kind: PlaneKind,
    pub step: f64,
    /// `data[16 a + d]` holds `∂_a ∂_d g` as a matrix.
    data: Vec<Matrix16>,
}

impl JetTable {
    /// `g_{βγ;αδ} = ∂_α ∂_δ g(β, γ)`.
    pub fn get(&self, beta: usize, gamma: usize, alpha: usize, delta: usize) -> f64 {
        self.data[alpha * N + delta][(beta, gamma)]
    }
}

/// Second jets by central differences plus one Richardson level.
pub fn second_jets_origin(kind: PlaneKind, step: f64) -> JetTable {
    let g = metric_fn(kind, Chart::U1);
    let origin = [0.0; N];
    let mut data = vec![Matrix16::zeros(); N * N];
    for a in 0..N {
        for d in a..N {
            let m = fd::second_partial_richardson(&g, &origin, a, d, step);
            data[a * N + d] = m;
            data[d * N + a] = m;
        }
    }
    JetTable { kind, step, data }
}

/// The expected second jet `∂_a ∂_d g(b, c)` at the base point.
///
/// Nonzero jets are `e_j e_j g(e_i, e_i) = f_j f_j g(f_i, f_i)`,
/// `f_j f_j g(e_i, e_i) = e_j e_j g(f_i, f_i)` and
/// `e_l f_k g(e_i, f_j) ∝ <x_l x̄_k, x_i x̄_j>`.
pub fn expected_second_jet(kind: PlaneKind, b: usize, c: usize, a: usize, d: usize) -> f64 {
    let (same, cross, mix) = match kind {
        PlaneKind::Op2 | PlaneKind::ParaOp2 => (-4.0, -2.0, -1.0),
        PlaneKind::Op11 => (-4.0, 2.0, 1.0),
        PlaneKind::Oh2 => (4.0, 2.0, 1.0),
    };
    let algebra = kind.algebra();
    let eps = |n: usize| if kind == PlaneKind::ParaOp2 { algebra.epsilon(n % 8) } else { 1.0 };
    let block = |n: usize| n / 8;
    if b == c && a == d {
        let jet = if block(a) == block(b) { same } else { cross };
        return jet * eps(a) * eps(b);
    }
    let (b, c) = if block(b) == 1 { (c, b) } else { (b, c) };
    let (a, d) = if block(a) == 1 { (d, a) } else { (a, d) };
    if block(b) == 0 && block(c) == 1 && block(a) == 0 && block(d) == 1 {
        let x = |n| HyperNumber::basis(algebra, n);
        let (i, j, k, l) = (b, c - 8, d - 8, a);
        return mix * (x(l) * x(k).conj()).inner_unchecked(&(x(i) * x(j).conj()));
    }
    0.0
}

/// First partials of the metric at the base point, one matrix per direction.
pub fn first_jets_origin(kind: PlaneKind, step: f64) -> Vec<Matrix16> {
    let g = metric_fn(kind, Chart::U1);
    (0..N).map(|k| fd::partial(&g, &[0.0; N], k, step)).collect()
}

/// A dense `16^4` table `R_{αβγδ}`.
#[derive(Debug, Clone)]
pub struct CurvatureAtOrigin {
    pub kind: PlaneKind,
    data: Vec<f64>,
}

impl CurvatureAtOrigin {
    pub fn from_fn(kind: PlaneKind, mut f: impl FnMut(usize, usize, usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(N * N * N * N);
        for a in 0..N {
            for b in 0..N {
                for c in 0..N {
                    for d in 0..N {
                        data.push(f(a, b, c, d));
                    }
                }
            }
        }
        CurvatureAtOrigin { kind, data }
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize, c: usize, d: usize) -> f64 {
        self.data[((a * N + b) * N + c) * N + d]
    }

    /// Largest `|self - other|` over all components.
    pub fn max_diff(&self, other: &CurvatureAtOrigin) -> f64 {
        self.data.iter().zip(&other.data).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
    }

    /// Worst violation of each curvature symmetry.
    pub fn symmetry_residuals(&self) -> SymmetryResiduals {
        let mut r = SymmetryResiduals::default();
        for a in 0..N {
            for b in 0..N {
                for c in 0..N {
                    for d in 0..N {
                        let x = self.get(a, b, c, d);
                        r.first_pair = r.first_pair.max((x + self.get(b, a, c, d)).abs());
                        r.second_pair = r.second_pair.max((x + self.get(a, b, d, c)).abs());
                        r.pair_exchange = r.pair_exchange.max((x - self.get(c, d, a, b)).abs());
                        let bianchi = x + self.get(b, c, a, d) + self.get(c, a, b, d);
                        r.bianchi = r.bianchi.max(bianchi.abs());
                    }
                }
            }
        }
        r
    }

    /// Largest component magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, serde::Serialize)]
pub struct SymmetryResiduals {
    pub first_pair: f64,
    pub second_pair: f64,
    pub pair_exchange: f64,
    pub bianchi: f64,
}

impl SymmetryResiduals {
    pub fn max(&self) -> f64 {
        self.first_pair.max(self.second_pair).max(self.pair_exchange).max(self.bianchi)
    }
}

pub fn riemann_origin_numeric(kind: PlaneKind) -> CurvatureAtOrigin {
    riemann_origin_numeric_with_step(kind, crate::tolerances::SECOND_JET_STEP)
}

pub fn riemann_origin_numeric_with_step(kind: PlaneKind, step: f64) -> CurvatureAtOrigin {
    riemann_from_jets(&second_jets_origin(kind, step))
}

pub fn riemann_from_jets(j: &JetTable) -> CurvatureAtOrigin {
    CurvatureAtOrigin::from_fn(j.kind, |a, b, c, d| {
        0.5 * (j.get(b, c, a, d) + j.get(a, d, b, c) - j.get(a, c, b, d) - j.get(b, d, a, c))
    })
}

/// A tangent vector at the base point as a pair of algebra elements.
pub type TangentPair = (HyperNumber, HyperNumber);

pub fn to_pair(kind: PlaneKind, v: &TangentVector) -> TangentPair {
    let mut a = [0.0; 8];
    let mut b = [0.0; 8];
    a.copy_from_slice(&v.as_slice()[..8]);
    b.copy_from_slice(&v.as_slice()[8..]);
    (HyperNumber::new(kind.algebra(), a), HyperNumber::new(kind.algebra(), b))
}

pub fn from_pair(x: &TangentPair) -> TangentVector {
    TangentVector::from_iterator(x.0.coeffs().iter().chain(x.1.coeffs()).copied())
}

/// The closed-form curvature tensor at the base point on `(a,b), (c,d), (e,f), (g,h)`.
///
/// ```text
/// 4<a,e><c,g> - 4<c,e><a,g> + 4<b,f><d,h> - 4<d,f><b,h>
///   + s ( -<e d̄, g b̄> + <e b̄, g d̄> - <c f̄, a h̄> + <a f̄, c h̄> - <a d̄ - c b̄, g f̄ - e h̄> )
/// ```
///
/// with `s = 1` for the projective planes and `s = -1` for the indefinite
/// plane. The hyperbolic plane is the negative of the octonionic projective
/// plane.
pub fn riemann_closed_form(
    kind: PlaneKind,
    x: &TangentPair,
    y: &TangentPair,
    z: &TangentPair,
    w: &TangentPair,
) -> Result<f64> {
    for h in [&x.0, &x.1, &y.0, &y.1, &z.0, &z.1, &w.0, &w.1] {
        if h.kind() != kind.algebra() {
            return Err(Error::KindMismatch { left: kind.algebra(), right: h.kind() });
        }
    }
    Ok(closed_form_unchecked(kind, x, y, z, w))
}

fn closed_form_unchecked(kind: PlaneKind, x: &TangentPair, y: &TangentPair, z: &TangentPair, w: &TangentPair) -> f64 {
    let ((a, b), (c, d), (e, f), (g, h)) = (x, y, z, w);
    let ip = |p: &HyperNumber, q: &HyperNumber| p.inner_unchecked(q);
    let (bb, db, fb, hb) = (b.conj(), d.conj(), f.conj(), h.conj());
    let quartic =
        4.0 * ip(a, e) * ip(c, g) - 4.0 * ip(c, e) * ip(a, g) + 4.0 * ip(b, f) * ip(d, h) - 4.0 * ip(d, f) * ip(b, h);
    let coupling = -ip(&(*e * db), &(*g * bb)) + ip(&(*e * bb), &(*g * db)) - ip(&(*c * fb), &(*a * hb))
        + ip(&(*a * fb), &(*c * hb))
        - ip(&(*a * db - *c * bb), &(*g * fb - *e * hb));
    match kind {
        PlaneKind::Op2 | PlaneKind::ParaOp2 => quartic + coupling,
        PlaneKind::Op11 => quartic - coupling,
        PlaneKind::Oh2 => -(quartic + coupling),
    }
}

/// The closed form on frame vectors, as a dense table.
pub fn riemann_closed_form_tensor(kind: PlaneKind) -> CurvatureAtOrigin {
    let basis: Vec<TangentPair> = (0..N).map(|i| frame_pair(kind, i)).collect();
    CurvatureAtOrigin::from_fn(kind, |a, b, c, d| {
        closed_form_unchecked(kind, &basis[a], &basis[b], &basis[c], &basis[d])
    })
}

/// Frame vector `e_i` (`i < 8`) or `f_{i-8}` as a pair.
pub fn frame_pair(kind: PlaneKind, index: usize) -> TangentPair {
    let algebra = kind.algebra();
    let zero = HyperNumber::zero(algebra);
    if index < 8 {
        (HyperNumber::basis(algebra, index), zero)
    } else {
        (zero, HyperNumber::basis(algebra, index - 8))
    }
}

/// The component `R(α, β, γ, δ)` as listed by the component theorems, zero
/// for frame patterns that are not listed.
pub fn listed_component(kind: PlaneKind, alpha: usize, beta: usize, gamma: usize, delta: usize) -> f64 {
    if kind == PlaneKind::Oh2 {
        return -listed_component(PlaneKind::Op2, alpha, beta, gamma, delta);
    }
    let algebra = kind.algebra();
    let x = |i: usize| HyperNumber::basis(algebra, i);
    // <x_i conj(x_j), x_k conj(x_l)>
    let q = |i, j, k, l| (x(i) * x(j).conj()).inner_unchecked(&(x(k) * x(l).conj()));
    let eps = |i: usize| if kind == PlaneKind::ParaOp2 { algebra.epsilon(i) } else { 1.0 };
    // Items (3) and (4) change sign for the indefinite plane.
    let s = if kind == PlaneKind::Op11 { -1.0 } else { 1.0 };

    let is_f = [alpha, beta, gamma, delta].map(|n| n >= 8);
    let [i, j, k, l] = [alpha, beta, gamma, delta].map(|n| n % 8);
    match is_f {
        // (1), (2): R(e_i,e_j,e_i,e_j) = -R(e_i,e_j,e_j,e_i) = 4 εi εj
        [false, false, false, false] | [true, true, true, true] => {
            if i == j {
                0.0
            } else if (k, l) == (i, j) {
                4.0 * eps(i) * eps(j)
            } else if (k, l) == (j, i) {
                -4.0 * eps(i) * eps(j)
            } else {
                0.0
            }
        }
        // (3): R(e_i,e_j,f_k,f_l) = R(f_k,f_l,e_i,e_j)
        [false, false, true, true] => s * (-q(i, l, j, k) + q(j, l, i, k)),
        [true, true, false, false] => s * (-q(k, j, l, i) + q(l, j, k, i)),
        // (4): R(e_i,f_j,e_k,f_l) = R(f_i,e_j,f_k,e_l) = <x_i x̄_j, x_k x̄_l>
        [false, true, false, true] | [true, false, true, false] => s * q(i, j, k, l),
        // (4): R(e_i,f_j,f_l,e_k) = R(f_i,e_j,e_l,f_k) = -<x_i x̄_j, x_k x̄_l>
        [false, true, true, false] | [true, false, false, true] => -s * q(i, j, l, k),
        _ => 0.0,
    }
}

pub fn listed_tensor(kind: PlaneKind) -> CurvatureAtOrigin {
    CurvatureAtOrigin::from_fn(kind, |a, b, c, d| listed_component(kind, a, b, c, d))
}

/// Largest `|R'(α,β,γ,δ) - σ R(α,β,γ,δ)|` over frame quadruples, where `R'`
/// is the closed form evaluated after conjugating the second octonion of
/// each argument and `σ` is the product of the signs `conj(x_i) = ±x_i`
/// picked up by the `f` indices.
///
/// This is the relabeling that identifies `(a, conj(b))` with the frame;
/// the listed component values carry over with those signs.
pub fn conjugation_relabeling_residual(kind: PlaneKind) -> f64 {
    let basis: Vec<TangentPair> = (0..N).map(|i| frame_pair(kind, i)).collect();
    let conj: Vec<TangentPair> = basis.iter().map(|(a, b)| (*a, b.conj())).collect();
    let sign = |n: usize| if n > 8 { -1.0 } else { 1.0 };
    let mut worst: f64 = 0.0;
    for a in 0..N {
        for b in 0..N {
            for c in 0..N {
                for d in 0..N {
                    let relabeled = closed_form_unchecked(kind, &conj[a], &conj[b], &conj[c], &conj[d]);
                    let sigma = sign(a) * sign(b) * sign(c) * sign(d);
                    worst = worst.max((relabeled - sigma * listed_component(kind, a, b, c, d)).abs());
                }
            }
        }
    }
    worst
}

/// Christoffel symbols `Γ^δ_{αγ}` at raw coordinates, stored as `gamma[δ][(α, γ)]`.
fn christoffel(g: &impl Fn(&[f64; N]) -> Matrix16, x: &[f64; N], h: f64) -> Result<Vec<Matrix16>> {
    let dg: Vec<Matrix16> = (0..N).map(|k| fd::partial(g, x, k, h)).collect();
    let ginv = g(x).try_inverse().ok_or(Error::InvalidStep("metric is singular".into()))?;
    // Γ_{ε,αγ} = ½ (∂_α g_{εγ} + ∂_γ g_{εα} - ∂_ε g_{αγ})
    let lowered: Vec<Matrix16> =
        (0..N).map(|e| Matrix16::from_fn(|a, c| 0.5 * (dg[a][(e, c)] + dg[c][(e, a)] - dg[e][(a, c)]))).collect();
    Ok((0..N)
        .map(|d| {
            let mut m = Matrix16::zeros();
            for (e, low) in lowered.iter().enumerate() {
                let w = ginv[(d, e)];
                if w != 0.0 {
                    m += low * w;
                }
            }
            m
        })
        .collect())
}

/// Fully lowered curvature at a general point by nested central differences.
pub fn riemann_at_point(p: &ChartPoint, h: f64) -> Result<CurvatureAtOrigin> {
    let g = metric_fn(p.kind, p.chart);
    let x = p.coords();
    let metric = metric_matrix(p)?;
    let gamma = christoffel(&g, &x, h)?;
    // dgamma[b][d][(a, c)] = ∂_b Γ^d_{ac}
    let mut dgamma = Vec::with_capacity(N);
    for b in 0..N {
        let mut plus = x;
        let mut minus = x;
        plus[b] += h;
        minus[b] -= h;
        let gp = christoffel(&g, &plus, h)?;
        let gm = christoffel(&g, &minus, h)?;
        dgamma.push((0..N).map(|d| (gp[d] - gm[d]) / (2.0 * h)).collect::<Vec<_>>());
    }
    // Upper-index tensor up[d][a][b][c] = R_{abc}^d.
    let mut up = vec![0.0; N * N * N * N];
    let at = |d: usize, a: usize, b: usize, c: usize| ((d * N + a) * N + b) * N + c;
    for a in 0..N {
        for b in 0..N {
            for c in 0..N {
                for d in 0..N {
                    let mut r = dgamma[b][d][(a, c)] - dgamma[a][d][(b, c)];
                    for e in 0..N {
                        r += gamma[e][(a, c)] * gamma[d][(b, e)] - gamma[e][(b, c)] * gamma[d][(a, e)];
                    }
                    up[at(d, a, b, c)] = r;
                }
            }
        }
    }
    Ok(CurvatureAtOrigin::from_fn(p.kind, |a, b, c, d| (0..N).map(|e| metric[(d, e)] * up[at(e, a, b, c)]).sum()))
}

/// `J^δ_β = g^{δε} R(v, e_β, v, e_ε)` for a lowered tensor and metric.
pub fn jacobi_matrix(r: &CurvatureAtOrigin, metric: &Matrix16, v: &TangentVector) -> Result<Matrix16> {
    let ginv = metric.try_inverse().ok_or(Error::InvalidStep("metric is singular".into()))?;
    let mut form = Matrix16::zeros();
    for b in 0..N {
        for e in 0..N {
            let mut s = 0.0;
            for a in 0..N {
                if v[a] == 0.0 {
                    continue;
                }
                for c in 0..N {
                    s += v[a] * v[c] * r.get(a, b, c, e);
                }
            }
            form[(e, b)] = s;
        }
    }
    Ok(ginv * form)
}

/// Eigenvalues of a real matrix that should have a real spectrum, sorted.
///
/// Fails when an imaginary part exceeds `imag_tol` times the spectral scale.
pub fn real_spectrum(m: &Matrix16, imag_tol: f64) -> Result<Vec<f64>> {
    // The unbounded solver can stall on the highly degenerate spectra met
    // here; a relative deflation threshold of 1e-12 always converges.
    let schur = [SCHUR_DEFLATION, 1e3 * SCHUR_DEFLATION]
        .into_iter()
        .find_map(|eps| Schur::try_new(*m, eps, SCHUR_MAX_ITER))
        .ok_or_else(|| Error::InvalidStep("Schur iteration did not converge".into()))?;
    let eig: Vec<Complex<f64>> = schur.complex_eigenvalues().iter().copied().collect();
    let scale = eig.iter().fold(1.0f64, |s, z| s.max(z.norm()));
    if let Some(z) = eig.iter().find(|z| z.im.abs() > imag_tol * scale) {
        return Err(Error::InvalidStep(format!("Jacobi operator has a complex eigenvalue {z}")));
    }
    let mut re: Vec<f64> = eig.iter().map(|z| z.re).collect();
    re.sort_by(f64::total_cmp);
    Ok(re)
}

/// Spectrum of the numerically assembled Jacobi operator at a point.
///
/// `v` must be non-null; it is rescaled to `|g(v,v)| = 1` at the point.
pub fn jacobi_spectrum_at_point(p: &ChartPoint, v: &TangentVector) -> Result<Vec<f64>> {
    jacobi_spectrum_at_point_with_step(p, v, GENERAL_POINT_STEP)
}

pub fn jacobi_spectrum_at_point_with_step(p: &ChartPoint, v: &TangentVector, h: f64) -> Result<Vec<f64>> {
    let metric = metric_matrix(p)?;
    let norm = (v.transpose() * metric * v)[0];
    if norm.abs() <= NULL_NORM {
        return Err(Error::NullVector(norm));
    }
    let v = v / norm.abs().sqrt();
    let r =
        if p.is_origin() && h == GENERAL_POINT_STEP { riemann_origin_numeric(p.kind) } else { riemann_at_point(p, h)? };
    let j = jacobi_matrix(&r, &metric, &v)?;
    // Finite-difference noise is far above machine precision here.
    real_spectrum(&j, EIGENVALUE_IMAGINARY.max(1e-4))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraKind;

    fn pair(kind: PlaneKind, i: usize) -> TangentPair {
        frame_pair(kind, i)
    }

    #[test]
    fn closed_form_examples() {
        let k = PlaneKind::Op2;
        let (e1, e2, f1) = (pair(k, 0), pair(k, 1), pair(k, 8));
        assert_eq!(riemann_closed_form(k, &e1, &e2, &e1, &e2).unwrap(), 4.0);
        assert_eq!(riemann_closed_form(k, &e1, &f1, &e1, &f1).unwrap(), 1.0);
        let k = PlaneKind::Op11;
        let (e1, f1) = (pair(k, 0), pair(k, 8));
        assert_eq!(riemann_closed_form(k, &e1, &f1, &e1, &f1).unwrap(), -1.0);
        let k = PlaneKind::Oh2;
        assert_eq!(riemann_closed_form(k, &pair(k, 0), &pair(k, 1), &pair(k, 0), &pair(k, 1)).unwrap(), -4.0);
    }

    #[test]
    fn closed_form_rejects_mixed_algebras() {
        let o = pair(PlaneKind::Op2, 0);
        let p = pair(PlaneKind::ParaOp2, 0);
        assert!(riemann_closed_form(PlaneKind::Op2, &o, &o, &o, &p).is_err());
    }

    #[test]
    fn listed_examples() {
        assert_eq!(listed_component(PlaneKind::Op2, 0, 1, 0, 1), 4.0);
        assert_eq!(listed_component(PlaneKind::Op2, 0, 1, 1, 0), -4.0);
        assert_eq!(listed_component(PlaneKind::Oh2, 0, 1, 0, 1), -4.0);
        assert_eq!(listed_component(PlaneKind::ParaOp2, 4, 5, 4, 5), 4.0);
        assert_eq!(listed_component(PlaneKind::ParaOp2, 0, 5, 0, 5), -4.0);
        assert_eq!(listed_component(PlaneKind::Op2, 0, 0, 0, 8), 0.0);
        assert_eq!(AlgebraKind::ParaOctonion.epsilon(5), -1.0);
    }

    #[test]
    fn numeric_origin_values() {
        let r = riemann_origin_numeric(PlaneKind::Op2);
        assert!((r.get(0, 1, 0, 1) - 4.0).abs() < 1e-6);
        let r = riemann_origin_numeric(PlaneKind::Oh2);
        assert!((r.get(0, 1, 0, 1) + 4.0).abs() < 1e-6);
        let r = riemann_origin_numeric(PlaneKind::ParaOp2);
        assert!((r.get(4, 5, 4, 5) - 4.0).abs() < 1e-6);
    }
}
