//! Jacobi operators at the base point and the special Osserman conditions.
//!
//! For `v = (a, b)` the operator `J_v(x) = R(v, x) v` is given in closed form:
//!
//! ```text
//! projective:  c' = (4|a|^2 + |b|^2) c + 3 (a b̄) d - 4 g(v, x) a
//!              d' = (|a|^2 + 4|b|^2) d + 3 (b ā) c - 4 g(v, x) b
//! indefinite:  c' = (4|a|^2 - |b|^2) c - 3 (a b̄) d - 4 g(v, x) a
//!              d' = (|a|^2 - 4|b|^2) d + 3 (b ā) c - 4 g(v, x) b
//! ```
//!
//! and the hyperbolic plane's operator is the negative of the octonionic one.

use nalgebra::SVector;
use serde::Serialize;

use crate::algebra::{AlgebraKind, HyperNumber};
use crate::curvature::{self, from_pair, to_pair, TangentPair};
use crate::error::{Error, Result};
use crate::fd::Matrix16;
use crate::metric::origin_metric;
use crate::plane::PlaneKind;
use crate::sampling::{Sampler, TangentVector};
use crate::tolerances::{EIGENSPACE_RANK, EIGENVALUE_IMAGINARY, NULL_NORM};

/// In-span picks need `|g(w,w)|` at least this times `|w|^2`. Split-signature
/// eigenspaces rarely reach the tangent-sampling margin.
const SPAN_NON_NULL: f64 = 1e-3;

/// Eigenvalue constants `(λ, μ)`: the nonzero eigenvalues are `λ ε_v` and `μ ε_v`.
pub fn eigen_constants(kind: PlaneKind) -> (f64, f64) {
    match kind {
        PlaneKind::Oh2 => (-4.0, -1.0),
        _ => (4.0, 1.0),
    }
}

/// `g(x, y)` with the metric at the base point.
pub fn origin_inner(kind: PlaneKind, x: &TangentVector, y: &TangentVector) -> f64 {
    (x.transpose() * origin_metric(kind) * y)[0]
}

#[derive(Debug, Clone)]
pub struct JacobiOperator {
    pub kind: PlaneKind,
    pub v: TangentVector,
    /// `g(v, v)` at the base point.
    pub epsilon: f64,
    pub matrix: Matrix16,
}

impl JacobiOperator {
    pub fn apply(&self, x: &TangentVector) -> TangentVector {
        self.matrix * x
    }

    /// `(λ ε_v, μ ε_v)`.
    pub fn eigenvalue_targets(&self) -> (f64, f64) {
        let (l, m) = eigen_constants(self.kind);
        (l * self.epsilon, m * self.epsilon)
    }

    /// The expected spectrum `{0, λε (x7), με (x8)}`, sorted.
    pub fn expected_spectrum(&self) -> Vec<f64> {
        let (l, m) = self.eigenvalue_targets();
        let mut s = vec![0.0];
        s.extend([l; 7]);
        s.extend([m; 8]);
        s.sort_by(f64::total_cmp);
        s
    }

    /// Real eigenvalues of the plain matrix, sorted; fails on complex ones.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        curvature::real_spectrum(&self.matrix, EIGENVALUE_IMAGINARY)
    }

    /// `dim ker(J - t I)`, singular values counted as zero below
    /// `EIGENSPACE_RANK` times the operator's scale.
    pub fn nullity(&self, t: f64) -> usize {
        let shifted = self.matrix - Matrix16::identity() * t;
        let scale = self.matrix.amax().max(1.0);
        shifted.singular_values().iter().filter(|s| **s <= EIGENSPACE_RANK * scale).count()
    }

    /// `M0 J - (M0 J)^T`, zero for a `g`-self-adjoint operator.
    pub fn self_adjoint_residual(&self) -> f64 {
        let m = origin_metric(self.kind) * self.matrix;
        (m - m.transpose()).amax()
    }
}

fn closed_form_image(kind: PlaneKind, v: &TangentPair, x: &TangentPair) -> TangentPair {
    let ((a, b), (c, d)) = (v, x);
    let (na, nb) = (a.norm_sq(), b.norm_sq());
    let g = match kind {
        PlaneKind::Op11 => a.inner_unchecked(c) - b.inner_unchecked(d),
        _ => a.inner_unchecked(c) + b.inner_unchecked(d),
    };
    let ab = *a * b.conj();
    let ba = *b * a.conj();
    let (c2, d2) = match kind {
        PlaneKind::Op11 => (
            *c * (4.0 * na - nb) - ab * *d * 3.0 - *a * (4.0 * g),
            *d * (na - 4.0 * nb) + ba * *c * 3.0 - *b * (4.0 * g),
        ),
        _ => (
            *c * (4.0 * na + nb) + ab * *d * 3.0 - *a * (4.0 * g),
            *d * (na + 4.0 * nb) + ba * *c * 3.0 - *b * (4.0 * g),
        ),
    };
    match kind {
        PlaneKind::Oh2 => (-c2, -d2),
        _ => (c2, d2),
    }
}

/// Jacobi operator at the base point from its closed form.
pub fn jacobi_operator(kind: PlaneKind, v: &TangentVector) -> JacobiOperator {
    let vp = to_pair(kind, v);
    let mut matrix = Matrix16::zeros();
    for k in 0..16 {
        let image = from_pair(&closed_form_image(kind, &vp, &curvature::frame_pair(kind, k)));
        matrix.set_column(k, &image);
    }
    JacobiOperator { kind, v: *v, epsilon: origin_inner(kind, v, v), matrix }
}

/// Same operator built from the curvature tensor: `J^δ_β = g^{δε} R(v, e_β, v, e_ε)`.
pub fn jacobi_from_tensor(kind: PlaneKind, v: &TangentVector) -> Matrix16 {
    let vp = to_pair(kind, v);
    let ginv = origin_metric(kind); // diagonal ±1, its own inverse
    let mut form = Matrix16::zeros();
    for b in 0..16 {
        let eb = curvature::frame_pair(kind, b);
        for e in 0..16 {
            let ee = curvature::frame_pair(kind, e);
            form[(e, b)] = curvature::riemann_closed_form(kind, &vp, &eb, &vp, &ee).expect("same algebra");
        }
    }
    ginv * form
}

/// Basis of `{c : <c, a> = 0}`, dropping the frame direction where `a` is largest.
fn orthogonal_complement(a: &HyperNumber) -> Vec<HyperNumber> {
    let algebra = a.kind();
    let na = a.norm_sq();
    let drop = (0..8).max_by(|&i, &j| a.coeffs()[i].abs().total_cmp(&a.coeffs()[j].abs())).unwrap_or(0);
    (0..8)
        .filter(|&i| i != drop)
        .map(|i| {
            let x = HyperNumber::basis(algebra, i);
            x - *a * (x.inner_unchecked(a) / na)
        })
        .collect()
}

fn frame(algebra: AlgebraKind) -> Vec<HyperNumber> {
    (0..8).map(|i| HyperNumber::basis(algebra, i)).collect()
}

/// Bases of the `λε` (7 vectors) and `με` (8 vectors) eigenspaces of `J_v`.
///
/// The pivot is whichever of `|a|^2`, `|b|^2` is larger in magnitude.
pub fn eigenspace_bases(kind: PlaneKind, v: &TangentVector) -> Result<(Vec<TangentVector>, Vec<TangentVector>)> {
    let eps = origin_inner(kind, v, v);
    if eps.abs() <= NULL_NORM {
        return Err(Error::NullVector(eps));
    }
    let (a, b) = to_pair(kind, v);
    let (na, nb) = (a.norm_sq(), b.norm_sq());
    let algebra = kind.algebra();
    let ab = a * b.conj();
    let ba = b * a.conj();
    // The μ-space coupling has a minus sign in the projective planes and
    // the hyperbolic plane, a plus sign in the indefinite plane.
    let mu_sign = if kind == PlaneKind::Op11 { 1.0 } else { -1.0 };
    let (lambda, mu): (Vec<TangentPair>, Vec<TangentPair>) = if na.abs() >= nb.abs() {
        (
            orthogonal_complement(&a).into_iter().map(|c| (c, ba * c / na)).collect(),
            frame(algebra).into_iter().map(|d| (ab * d * (mu_sign / na), d)).collect(),
        )
    } else {
        (
            orthogonal_complement(&b).into_iter().map(|d| (ab * d / nb, d)).collect(),
            frame(algebra).into_iter().map(|c| (c, ba * c * (mu_sign / nb))).collect(),
        )
    };
    Ok((lambda.iter().map(from_pair).collect(), mu.iter().map(from_pair).collect()))
}

fn columns(vectors: &[TangentVector]) -> nalgebra::DMatrix<f64> {
    nalgebra::DMatrix::from_fn(16, vectors.len(), |i, k| vectors[k][i])
}

/// Numerical rank of a set of vectors, relative threshold `EIGENSPACE_RANK`.
pub fn rank(vectors: &[TangentVector]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let m = columns(vectors);
    let sv = m.singular_values();
    let scale = sv.max().max(f64::MIN_POSITIVE);
    sv.iter().filter(|s| **s > EIGENSPACE_RANK * scale).count()
}

/// Orthogonal projector onto the span of `vectors`.
pub fn projector(vectors: &[TangentVector]) -> Matrix16 {
    let m = columns(vectors);
    let svd = m.svd(true, false);
    let u = svd.u.expect("requested");
    let scale = svd.singular_values.max().max(f64::MIN_POSITIVE);
    let mut p = Matrix16::zeros();
    for (k, s) in svd.singular_values.iter().enumerate() {
        if *s > EIGENSPACE_RANK * scale {
            let col = SVector::<f64, 16>::from_iterator(u.column(k).iter().copied());
            p += col * col.transpose();
        }
    }
    p
}

/// `E_λ(v) = span{v} ⊕ ker(J_v - λ ε_v)`.
pub fn lambda_space(kind: PlaneKind, v: &TangentVector) -> Result<Vec<TangentVector>> {
    let (mut lambda, _) = eigenspace_bases(kind, v)?;
    lambda.push(*v);
    Ok(lambda)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct ConditionResult {
    pub passed: usize,
    pub total: usize,
    pub worst_residual: f64,
}

impl ConditionResult {
    fn record(&mut self, residual: f64, tol: f64) -> bool {
        self.total += 1;
        let ok = residual <= tol;
        if ok {
            self.passed += 1;
        }
        self.worst_residual = self.worst_residual.max(residual);
        ok
    }

    pub fn all_passed(&self) -> bool {
        self.passed == self.total
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct OssermanReport {
    pub kind: String,
    pub samples: usize,
    pub tolerance: f64,
    /// Closed-form operator against the tensor-based one.
    pub form_consistency: ConditionResult,
    /// Largest eigenvalue error against `{0, λε, με}`.
    pub spectrum: ConditionResult,
    /// `J w = λε w` and `J w = με w` on the constructed bases.
    pub eigenvectors: ConditionResult,
    /// Samples with eigenspace dimensions exactly 1, 7 and 8 and full-rank bases.
    pub dimensions: ConditionResult,
    pub condition_i: ConditionResult,
    pub condition_ii: ConditionResult,
    pub condition_iii: ConditionResult,
    pub lambda_symmetry: ConditionResult,
    pub failures: Vec<String>,
}

impl OssermanReport {
    pub fn all_passed(&self) -> bool {
        [
            &self.form_consistency,
            &self.spectrum,
            &self.eigenvectors,
            &self.dimensions,
            &self.condition_i,
            &self.condition_ii,
            &self.condition_iii,
            &self.lambda_symmetry,
        ]
        .iter()
        .all(|c| c.all_passed())
    }
}

/// A random unit non-null vector in the span of `basis`.
fn unit_in_span(kind: PlaneKind, basis: &[TangentVector], sampler: &mut Sampler) -> Option<TangentVector> {
    for _ in 0..100 {
        let mut w = TangentVector::zeros();
        for b in basis {
            w += b * sampler.uniform(-1.0, 1.0);
        }
        let n = origin_inner(kind, &w, &w);
        let scale = w.norm_squared();
        if scale > 0.0 && n.abs() >= SPAN_NON_NULL * scale {
            return Some(w / n.abs().sqrt());
        }
    }
    None
}

fn max_abs(v: &TangentVector) -> f64 {
    v.amax()
}

/// Checks Conditions I-III and the λ-symmetry on the given unit vectors.
///
/// Residuals are absolute for unit `v`; the sampler picks the vectors `w`
/// inside the eigenspaces.
pub fn check_special_osserman(
    kind: PlaneKind,
    samples: &[TangentVector],
    tol: f64,
    sampler: &mut Sampler,
) -> OssermanReport {
    let mut r =
        OssermanReport { kind: kind.name().to_string(), samples: samples.len(), tolerance: tol, ..Default::default() };
    for (n, v) in samples.iter().enumerate() {
        let fail = |what: &str, residual: f64, r: &mut OssermanReport| {
            r.failures.push(format!("sample {n}: {what} residual {residual:e}"));
        };
        let j = jacobi_operator(kind, v);
        let (lt, mt) = j.eigenvalue_targets();
        let scale = j.matrix.amax().max(1.0);

        let form = (j.matrix - jacobi_from_tensor(kind, v)).amax() / scale;
        if !r.form_consistency.record(form, tol) {
            fail("form consistency", form, &mut r);
        }

        // Condition I: the spectrum, diagonalizability and dimensions.
        let spectrum = match j.eigenvalues() {
            Ok(ev) => ev.iter().zip(j.expected_spectrum()).fold(0.0f64, |m, (a, b)| m.max((a - b).abs())),
            Err(_) => f64::INFINITY,
        };
        let spectrum_ok = r.spectrum.record(spectrum, tol);
        if !spectrum_ok {
            fail("spectrum", spectrum, &mut r);
        }
        let bases = match eigenspace_bases(kind, v) {
            Ok(b) => b,
            Err(e) => {
                r.failures.push(format!("sample {n}: {e}"));
                continue;
            }
        };
        let (lambda_basis, mu_basis) = &bases;
        let eigvec = lambda_basis
            .iter()
            .map(|w| max_abs(&(j.apply(w) - w * lt)) / w.amax())
            .chain(mu_basis.iter().map(|w| max_abs(&(j.apply(w) - w * mt)) / w.amax()))
            .fold(0.0f64, f64::max)
            / scale;
        if !r.eigenvectors.record(eigvec, tol) {
            fail("eigenvector", eigvec, &mut r);
        }
        let dims = [j.nullity(0.0), j.nullity(lt), j.nullity(mt), rank(lambda_basis), rank(mu_basis)];
        let dims_ok = dims == [1, 7, 8, 7, 8];
        r.dimensions.record(if dims_ok { 0.0 } else { 1.0 }, 0.0);
        if !dims_ok {
            r.failures.push(format!("sample {n}: eigenspace dimensions {dims:?}"));
        }
        let kernel = max_abs(&j.apply(v));
        let cond_i = if dims_ok { spectrum.max(kernel) } else { f64::INFINITY };
        if !r.condition_i.record(cond_i, tol) {
            fail("condition I", cond_i, &mut r);
        }

        // Condition II: E_λ(w) = E_λ(v) for unit w in E_λ(v), including w = v.
        let mut e_v = lambda_basis.clone();
        e_v.push(*v);
        let p_v = projector(&e_v);
        let mut ws = vec![*v];
        ws.extend(unit_in_span(kind, &e_v, sampler));
        let mut cond_ii = 0.0f64;
        for w in &ws {
            cond_ii = cond_ii.max(match lambda_space(kind, w) {
                Ok(e_w) => (projector(&e_w) - p_v).norm(),
                Err(_) => f64::INFINITY,
            });
        }
        if !r.condition_ii.record(cond_ii, tol) {
            fail("condition II", cond_ii, &mut r);
        }

        // Condition III and its λ analogue: v is in the matching kernel of J_w.
        let symmetric = |basis: &[TangentVector], pick: fn((f64, f64)) -> f64, sampler: &mut Sampler| match unit_in_span(
            kind, basis, sampler,
        ) {
            Some(w) => {
                let jw = jacobi_operator(kind, &w);
                let t = pick(jw.eigenvalue_targets());
                max_abs(&(jw.apply(v) - v * t)) / jw.matrix.amax().max(1.0)
            }
            None => f64::INFINITY,
        };
        let cond_iii = symmetric(mu_basis, |t| t.1, sampler);
        if !r.condition_iii.record(cond_iii, tol) {
            fail("condition III", cond_iii, &mut r);
        }
        let sym = symmetric(lambda_basis, |t| t.0, sampler);
        if !r.lambda_symmetry.record(sym, tol) {
            fail("lambda symmetry", sym, &mut r);
        }
    }
    r
}

/// The null vectors of the para-octonionic non-isotropy argument and what
/// the operators do with them.
#[derive(Debug, Clone, Serialize)]
pub struct WitnessReport {
    /// `v = (i + l, 0)` and `w = (1, l)`.
    pub v: [f64; 16],
    pub w: [f64; 16],
    pub v_norm: f64,
    pub w_norm: f64,
    /// `|J_(1,0) v - 4 v|`.
    pub v_in_lambda_space: f64,
    /// Kernel of `x -> (3 x1 - 3 l x2, -3 x2 + 3 l x1)`.
    pub restricted_kernel_dim: usize,
    /// Largest `|x1 - l x2|` over an orthonormal kernel basis.
    pub kernel_relation_residual: f64,
    /// Largest entry of the Gram matrix of the kernel, so every kernel vector is null.
    pub kernel_null_residual: f64,
    /// The full operator `J_w`, with its `-4 g(w, x)` terms, on the same kernel.
    pub full_operator_on_kernel: f64,
    pub full_kernel_dim: usize,
    pub full_kernel_null_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

fn kernel_basis(m: &Matrix16, tol: f64) -> Vec<TangentVector> {
    let svd = m.svd(false, true);
    let vt = svd.v_t.expect("requested");
    let scale = svd.singular_values.max().max(1.0);
    svd.singular_values
        .iter()
        .enumerate()
        .filter(|(_, s)| **s <= tol * scale)
        .map(|(k, _)| vt.row(k).transpose())
        .collect()
}

fn gram(kind: PlaneKind, basis: &[TangentVector]) -> f64 {
    let mut worst: f64 = 0.0;
    for x in basis {
        for y in basis {
            worst = worst.max(origin_inner(kind, x, y).abs());
        }
    }
    worst
}

pub fn non_isotropy_witness(tol: f64) -> WitnessReport {
    let kind = PlaneKind::ParaOp2;
    let algebra = kind.algebra();
    let x = |i| HyperNumber::basis(algebra, i);
    let zero = HyperNumber::zero(algebra);
    let (one, i, l) = (x(0), x(1), x(4));
    let v = from_pair(&(i + l, zero));
    let w = from_pair(&(one, l));

    let e1 = from_pair(&(one, zero));
    let j1 = jacobi_operator(kind, &e1);
    let v_in_lambda_space = max_abs(&(j1.apply(&v) - v * 4.0));

    let mut restricted = Matrix16::zeros();
    for k in 0..16 {
        let (x1, x2) = curvature::frame_pair(kind, k);
        let image = (x1 * 3.0 - l * x2 * 3.0, -(x2 * 3.0) + l * x1 * 3.0);
        restricted.set_column(k, &from_pair(&image));
    }
    let kernel = kernel_basis(&restricted, EIGENSPACE_RANK);
    let kernel_relation_residual = kernel
        .iter()
        .map(|k| {
            let (x1, x2) = to_pair(kind, k);
            (x1 - l * x2).max_abs()
        })
        .fold(0.0, f64::max);
    let kernel_null_residual = gram(kind, &kernel);

    let jw = jacobi_operator(kind, &w);
    let full_operator_on_kernel = kernel.iter().map(|k| max_abs(&jw.apply(k))).fold(0.0, f64::max);
    let full_kernel = kernel_basis(&jw.matrix, EIGENSPACE_RANK);
    let full_kernel_null_residual = gram(kind, &full_kernel);

    let v_norm = origin_inner(kind, &v, &v);
    let w_norm = origin_inner(kind, &w, &w);
    let pass = v_norm.abs() <= tol
        && w_norm.abs() <= tol
        && v.amax() > 0.0
        && w.amax() > 0.0
        && v_in_lambda_space <= tol
        && kernel.len() == 8
        && kernel_relation_residual <= tol
        && kernel_null_residual <= tol
        && full_operator_on_kernel <= tol;
    let arr = |t: &TangentVector| {
        let mut a = [0.0; 16];
        a.copy_from_slice(t.as_slice());
        a
    };
    WitnessReport {
        v: arr(&v),
        w: arr(&w),
        v_norm,
        w_norm,
        v_in_lambda_space,
        restricted_kernel_dim: kernel.len(),
        kernel_relation_residual,
        kernel_null_residual,
        full_operator_on_kernel,
        full_kernel_dim: full_kernel.len(),
        full_kernel_null_residual,
        tolerance: tol,
        pass,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(k: usize) -> TangentVector {
        let mut v = TangentVector::zeros();
        v[k] = 1.0;
        v
    }

    #[test]
    fn op2_spectrum_for_first_frame_vector() {
        let j = jacobi_operator(PlaneKind::Op2, &e(0));
        let ev = j.eigenvalues().unwrap();
        let want = j.expected_spectrum();
        for (a, b) in ev.iter().zip(&want) {
            assert!((a - b).abs() < 1e-12);
        }
        assert_eq!(want.iter().filter(|x| **x == 4.0).count(), 7);
        assert_eq!(want.iter().filter(|x| **x == 1.0).count(), 8);
    }

    #[test]
    fn op11_spectra() {
        let j = jacobi_operator(PlaneKind::Op11, &e(0));
        assert_eq!(j.epsilon, 1.0);
        assert_eq!(j.nullity(4.0), 7);
        assert_eq!(j.nullity(1.0), 8);
        let j = jacobi_operator(PlaneKind::Op11, &e(8));
        assert_eq!(j.epsilon, -1.0);
        assert_eq!(j.nullity(-4.0), 7);
        assert_eq!(j.nullity(-1.0), 8);
    }

    #[test]
    fn oh2_is_negated() {
        let j = jacobi_operator(PlaneKind::Oh2, &e(0));
        assert_eq!(j.eigenvalue_targets(), (-4.0, -1.0));
        assert_eq!(j.nullity(-4.0), 7);
    }

    #[test]
    fn op2_bases_for_first_frame_vector() {
        let (l, m) = eigenspace_bases(PlaneKind::Op2, &e(0)).unwrap();
        for (k, w) in l.iter().enumerate() {
            assert_eq!(*w, e(k + 1));
        }
        for (k, w) in m.iter().enumerate() {
            assert_eq!(*w, e(8 + k));
        }
    }

    #[test]
    fn null_vector_rejected() {
        let v = e(0) + e(8);
        assert!(matches!(eigenspace_bases(PlaneKind::Op11, &v), Err(Error::NullVector(_))));
    }

    #[test]
    fn witness_passes() {
        let r = non_isotropy_witness(1e-10);
        assert!(r.pass, "{r:?}");
        assert_eq!(r.restricted_kernel_dim, 8);
    }
}
