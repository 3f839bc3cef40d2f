//! Reflections, rotations and their global extensions.
//!
//! A reflection step lives in one chart `Uc` and acts there linearly:
//!
//! ```text
//! Euclidean   (r^2 + |λ|^2 = 1):  (u, v) -> ( r u + λ v,  conj(λ) u - r v)
//! indefinite  (r^2 - |λ|^2 = 1):  (u, v) -> (-r u + λ v, -conj(λ) u + r v)
//! ```
//!
//! Both are instances of `(u, v) -> (p u + λ v, κ conj(λ) u + q v)`. Chart `c`
//! admits the Euclidean kind when its two coordinate slots carry the same
//! sign in the homogeneous form and the indefinite kind otherwise.
//!
//! To evaluate the map at points outside `Uc` the triple is permuted so that
//! slot `c` comes first (the other two keep their order). The chart map then
//! reads as a chart-1 map, and its rational extensions to the regions where
//! the second or third slot is invertible are applied. Several extensions
//! may apply to the same point; they agree, and the one with the largest
//! denominator is used.
//!
//! `Rotation { t }` is the composition of the chart-3 Euclidean reflections
//! with `(r, λ) = (cos t, sin t)` and then `(1, 0)`. On triples it is the real
//! rotation `[a, b, c] -> [a cos t + b sin t, -a sin t + b cos t, c]`.

use serde::{Deserialize, Serialize};

use crate::algebra::HyperNumber;
use crate::error::{Error, Result};
use crate::fd;
use crate::metric::metric_matrix;
use crate::plane::{self, Chart, ChartPoint, HomogeneousTriple, PlaneKind};
use crate::sampling::Sampler;
use crate::tolerances::{EXTENSION_DENOMINATOR, STEP_CONSTRAINT};

/// Below this a coordinate of a homogeneity target is treated as zero.
const NEGLIGIBLE: f64 = 1e-12;
/// `|a|^2 + |b|^2` below this sends para targets through a rotation first.
const PARA_DIRECT_MIN: f64 = 0.1;
const ROTATION_GRID: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IsometryStep {
    Euclidean { chart: Chart, r: f64, lambda: [f64; 8] },
    Indefinite { chart: Chart, r: f64, lambda: [f64; 8] },
    Rotation { t: f64 },
}

impl IsometryStep {
    pub fn euclidean(chart: Chart, r: f64, lambda: HyperNumber) -> Self {
        IsometryStep::Euclidean { chart, r, lambda: *lambda.coeffs() }
    }

    pub fn indefinite(chart: Chart, r: f64, lambda: HyperNumber) -> Self {
        IsometryStep::Indefinite { chart, r, lambda: *lambda.coeffs() }
    }

    pub fn rotation(t: f64) -> Self {
        IsometryStep::Rotation { t }
    }

    /// Checks the constraint on `(r, λ)` and that the chart admits the step.
    pub fn validate(&self, kind: PlaneKind) -> Result<()> {
        match *self {
            IsometryStep::Rotation { t } => {
                if !t.is_finite() {
                    return Err(Error::InvalidStep(format!("rotation angle {t} is not finite")));
                }
                if !euclidean_chart(kind, Chart::U3) {
                    return Err(Error::InvalidStep(format!("{kind} has no Euclidean reflections on U3")));
                }
                Ok(())
            }
            IsometryStep::Euclidean { chart, r, lambda } | IsometryStep::Indefinite { chart, r, lambda } => {
                let indefinite = matches!(self, IsometryStep::Indefinite { .. });
                if euclidean_chart(kind, chart) == indefinite {
                    let which = if indefinite { "indefinite" } else { "Euclidean" };
                    return Err(Error::InvalidStep(format!("{kind} has no {which} reflections on {chart}")));
                }
                let l = HyperNumber::new(kind.algebra(), lambda).norm_sq();
                let value = if indefinite { r * r - l } else { r * r + l };
                let scale = 1.0f64.max(r * r).max(l.abs());
                if !(value - 1.0).abs().le(&(STEP_CONSTRAINT * scale)) {
                    return Err(Error::InvalidStep(format!(
                        "reflection constraint violated: {value} instead of 1 (r = {r}, |λ|^2 = {l})"
                    )));
                }
                Ok(())
            }
        }
    }

    fn chart_maps(&self, kind: PlaneKind) -> Vec<ChartMap> {
        let algebra = kind.algebra();
        match *self {
            IsometryStep::Euclidean { chart, r, lambda } => {
                vec![ChartMap { chart, p: r, q: -r, kappa: 1.0, lambda: HyperNumber::new(algebra, lambda) }]
            }
            IsometryStep::Indefinite { chart, r, lambda } => {
                vec![ChartMap { chart, p: -r, q: r, kappa: -1.0, lambda: HyperNumber::new(algebra, lambda) }]
            }
            IsometryStep::Rotation { t } => {
                let (s, c) = t.sin_cos();
                let real = |x| HyperNumber::real(algebra, x);
                vec![
                    ChartMap { chart: Chart::U3, p: c, q: -c, kappa: 1.0, lambda: real(s) },
                    ChartMap { chart: Chart::U3, p: 1.0, q: -1.0, kappa: 1.0, lambda: real(0.0) },
                ]
            }
        }
    }
}

/// Whether chart `c` of `kind` carries Euclidean (rather than indefinite) reflections.
pub fn euclidean_chart(kind: PlaneKind, chart: Chart) -> bool {
    let s = kind.slot_signs();
    let [i, j] = chart.coordinate_slots();
    s[i] == s[j]
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IsometryComposition {
    /// Steps in the order they are applied.
    pub steps: Vec<IsometryStep>,
}

impl IsometryComposition {
    pub fn new(steps: Vec<IsometryStep>) -> Self {
        IsometryComposition { steps }
    }

    pub fn is_identity(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn validate(&self, kind: PlaneKind) -> Result<()> {
        self.steps.iter().try_for_each(|s| s.validate(kind))
    }
}

/// `(u, v) -> (p u + λ v, κ conj(λ) u + q v)` on chart `chart`.
#[derive(Debug, Clone, Copy)]
struct ChartMap {
    chart: Chart,
    p: f64,
    q: f64,
    kappa: f64,
    lambda: HyperNumber,
}

/// Moves slot `chart.pivot()` to the front, keeping the others in order.
fn permute(chart: Chart, t: &HomogeneousTriple) -> HomogeneousTriple {
    let [a, b, c] = t.slots;
    match chart {
        Chart::U1 => *t,
        Chart::U2 => HomogeneousTriple::new(b, a, c),
        Chart::U3 => HomogeneousTriple::new(c, a, b),
    }
}

fn unpermute(chart: Chart, t: &HomogeneousTriple) -> HomogeneousTriple {
    let [a, b, c] = t.slots;
    match chart {
        Chart::U1 => *t,
        Chart::U2 => HomogeneousTriple::new(b, a, c),
        Chart::U3 => HomogeneousTriple::new(b, c, a),
    }
}

/// The formulas that evaluate a chart map at a point, named by the slot
/// that is scaled to 1 and by which denominator is used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Route {
    /// The chart map itself (first slot invertible).
    Direct,
    /// Second slot invertible, image expressed with its second slot 1.
    SecondPrime,
    /// Second slot invertible, image expressed with its third slot 1.
    SecondDoublePrime,
    /// Third slot invertible, image expressed with its second slot 1.
    ThirdPrime,
    /// Third slot invertible, image expressed with its third slot 1.
    ThirdDoublePrime,
}

impl Route {
    const ALL: [Route; 5] =
        [Route::Direct, Route::SecondPrime, Route::SecondDoublePrime, Route::ThirdPrime, Route::ThirdDoublePrime];

    fn slot(self) -> usize {
        match self {
            Route::Direct => 0,
            Route::SecondPrime | Route::SecondDoublePrime => 1,
            Route::ThirdPrime | Route::ThirdDoublePrime => 2,
        }
    }
}

/// Evaluates the route on a permuted triple, returning the image and the
/// route's denominator. `None` when the route does not apply.
fn evaluate_route(
    kind: PlaneKind,
    m: &ChartMap,
    t: &HomogeneousTriple,
    route: Route,
) -> Option<(HomogeneousTriple, f64)> {
    let pivot = t.slots[route.slot()];
    if !kind.admissible_scale(&pivot) {
        return None;
    }
    let inv = pivot.inverse().ok()?;
    let s = t.scale_right(&inv);
    let algebra = kind.algebra();
    let one = HyperNumber::one(algebra);
    let (p, q, k, l) = (m.p, m.q, m.kappa, m.lambda);
    let lb = l.conj();
    let usable = |n: f64| n > EXTENSION_DENOMINATOR;

    let image = match route {
        Route::Direct => {
            let [_, y, z] = s.slots;
            let image = HomogeneousTriple::new(one, y * p + l * z, lb * y * k + z * q);
            return Some((image, 1.0));
        }
        Route::SecondPrime => {
            let [x, _, z] = s.slots;
            let n = (one * p + l * z).norm_sq();
            if !usable(n) {
                return None;
            }
            let xn = (x * p + (x * z.conj()) * lb) / n;
            let zn = (lb * (k * p) + (lb * z.conj()) * lb * k + z * (q * p) + lb * (q * z.norm_sq())) / n;
            (HomogeneousTriple::new(xn, one, zn), n)
        }
        Route::SecondDoublePrime => {
            let [x, _, z] = s.slots;
            let n = (lb * k + z * q).norm_sq();
            if !usable(n) {
                return None;
            }
            let xn = x * (l * k + z.conj() * q) / n;
            let yn = (l * (p * k) + z.conj() * (p * q) + (l * z) * l * k + l * (q * z.norm_sq())) / n;
            (HomogeneousTriple::new(xn, yn, one), n)
        }
        Route::ThirdPrime => {
            let [x, y, _] = s.slots;
            let n = (y * p + l).norm_sq();
            if !usable(n) {
                return None;
            }
            let xn = x * (y.conj() * p + lb) / n;
            let zn = (lb * (k * p * y.norm_sq()) + (lb * y) * lb * k + y.conj() * (q * p) + lb * q) / n;
            (HomogeneousTriple::new(xn, one, zn), n)
        }
        Route::ThirdDoublePrime => {
            let [x, y, _] = s.slots;
            let n = (lb * y * k + one * q).norm_sq();
            if !usable(n) {
                return None;
            }
            let xn = ((x * y.conj()) * l * k + x * q) / n;
            let yn = (l * (p * k * y.norm_sq()) + y * (p * q) + (l * y.conj()) * l * k + l * q) / n;
            (HomogeneousTriple::new(xn, yn, one), n)
        }
    };
    Some(image)
}

/// Preferred route: the slot of largest norm, and within it the larger denominator.
fn preferred_route(kind: PlaneKind, m: &ChartMap, t: &HomogeneousTriple) -> Option<HomogeneousTriple> {
    let slot = (0..3)
        .filter(|&i| kind.admissible_scale(&t.slots[i]))
        .max_by(|&i, &j| t.slots[i].norm_sq().total_cmp(&t.slots[j].norm_sq()))?;
    let best = Route::ALL
        .into_iter()
        .filter(|r| r.slot() == slot)
        .filter_map(|r| evaluate_route(kind, m, t, r))
        .max_by(|a, b| a.1.total_cmp(&b.1));
    best.or_else(|| Route::ALL.into_iter().find_map(|r| evaluate_route(kind, m, t, r))).map(|(image, _)| image)
}

fn apply_map(kind: PlaneKind, m: &ChartMap, t: &HomogeneousTriple) -> Result<HomogeneousTriple> {
    let permuted = permute(m.chart, t);
    let image = preferred_route(kind, m, &permuted).ok_or(Error::NoApplicableRegion)?;
    Ok(unpermute(m.chart, &image))
}

fn apply_step_triple(kind: PlaneKind, step: &IsometryStep, t: &HomogeneousTriple) -> Result<HomogeneousTriple> {
    step.chart_maps(kind).iter().try_fold(*t, |acc, m| apply_map(kind, m, &acc))
}

fn check_point(kind: PlaneKind, p: &ChartPoint) -> Result<()> {
    if p.kind != kind {
        return Err(Error::InvalidStep(format!("point belongs to {}, not {kind}", p.kind)));
    }
    if !plane::chart_contains(kind, p.chart, &p.u, &p.v)? {
        return Err(Error::OutsideDomain { kind, chart: p.chart });
    }
    Ok(())
}

/// Image of `point` under the global extension of `step`, expressed in the
/// chart with the largest pivot.
pub fn apply_step(kind: PlaneKind, step: &IsometryStep, point: &ChartPoint) -> Result<ChartPoint> {
    step.validate(kind)?;
    check_point(kind, point)?;
    let image = apply_step_triple(kind, step, &point.triple())?;
    plane::normalize_best(kind, &image)
}

pub fn apply_composition(kind: PlaneKind, comp: &IsometryComposition, point: &ChartPoint) -> Result<ChartPoint> {
    comp.validate(kind)?;
    check_point(kind, point)?;
    let mut t = point.triple();
    for step in &comp.steps {
        t = apply_step_triple(kind, step, &t)?;
    }
    if comp.is_identity() {
        return Ok(*point);
    }
    plane::normalize_best(kind, &t)
}

/// Every applicable route for a single-map reflection step, as chart points.
/// Used to check that the extensions agree where their regions overlap.
pub fn candidate_routes(kind: PlaneKind, step: &IsometryStep, point: &ChartPoint) -> Result<Vec<(Route, ChartPoint)>> {
    step.validate(kind)?;
    check_point(kind, point)?;
    let maps = step.chart_maps(kind);
    let [m] = maps.as_slice() else {
        return Err(Error::InvalidStep("route comparison needs a single reflection".into()));
    };
    let permuted = permute(m.chart, &point.triple());
    Ok(Route::ALL
        .into_iter()
        .filter_map(|r| evaluate_route(kind, m, &permuted, r).map(|(t, _)| (r, unpermute(m.chart, &t))))
        .filter_map(|(r, t)| plane::normalize_best(kind, &t).ok().map(|p| (r, p)))
        .collect())
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct IsometryDeviation {
    /// Largest `|J^T M(F p) J - M(p)|` over the evaluated samples.
    pub max_deviation: f64,
    /// Largest deviation divided by `max(|M(p)|, |M(F p)| |J|^2)`, the size
    /// of the terms that cancel. Para-octonionic maps can push samples close
    /// to the null cone where the absolute value is dominated by rounding.
    pub max_relative_deviation: f64,
    pub evaluated: usize,
    /// Samples that could not be evaluated, with the reason.
    pub failures: Vec<(usize, String)>,
}

/// Finite-difference pullback check of a composition on sample points.
pub fn verify_isometry(
    kind: PlaneKind,
    comp: &IsometryComposition,
    samples: &[ChartPoint],
    step: f64,
) -> Result<IsometryDeviation> {
    comp.validate(kind)?;
    let mut report = IsometryDeviation::default();
    for (i, p) in samples.iter().enumerate() {
        if comp.is_identity() {
            check_point(kind, p)?;
            report.evaluated += 1;
            continue;
        }
        match pullback_at(kind, comp, p, step) {
            Ok((dev, scale)) => {
                report.max_deviation = report.max_deviation.max(dev);
                report.max_relative_deviation = report.max_relative_deviation.max(dev / scale);
                report.evaluated += 1;
            }
            Err(e) => report.failures.push((i, e.to_string())),
        }
    }
    Ok(report)
}

fn pullback_at(kind: PlaneKind, comp: &IsometryComposition, p: &ChartPoint, step: f64) -> Result<(f64, f64)> {
    let image = apply_composition(kind, comp, p)?;
    let out_chart = image.chart;
    let map = |x: &[f64; 16]| {
        let q = apply_composition(kind, comp, &p.with_coords(x))?;
        Ok(plane::to_chart(&q, out_chart)?.coords())
    };
    let jac = fd::jacobian(map, &p.coords(), step)?;
    let m_image = metric_matrix(&image)?;
    let m_p = metric_matrix(p)?;
    let pulled = jac.transpose() * m_image * jac;
    let scale = m_p.amax().max(m_image.amax() * jac.amax().powi(2));
    Ok(((pulled - m_p).amax(), scale))
}

/// A random valid reflection of `kind` on a random chart.
pub fn random_reflection(kind: PlaneKind, sampler: &mut Sampler) -> IsometryStep {
    let chart = Chart::ALL[sampler.index(3)];
    let algebra = kind.algebra();
    let mut lambda = sampler.hyper(algebra) * 0.5;
    let sign = if sampler.index(2) == 0 { 1.0 } else { -1.0 };
    if euclidean_chart(kind, chart) {
        // r^2 = 1 - |λ|^2 must stay positive; para λ may have negative norm.
        let n = lambda.norm_sq();
        if n >= 0.9 {
            lambda = lambda * (0.9 / n).sqrt() * sampler.uniform(0.1, 1.0);
        }
        IsometryStep::euclidean(chart, sign * (1.0 - lambda.norm_sq()).sqrt(), lambda)
    } else {
        IsometryStep::indefinite(chart, sign * (1.0 + lambda.norm_sq()).sqrt(), lambda)
    }
}

/// A composition taking the base point to `target`.
pub fn isometry_to(target: &ChartPoint) -> Result<IsometryComposition> {
    let kind = target.kind;
    let target = plane::to_chart(target, Chart::U1)?;
    check_point(kind, &target)?;
    if target.u.max_abs() < NEGLIGIBLE && target.v.max_abs() < NEGLIGIBLE {
        return Ok(IsometryComposition::default());
    }
    let steps = match kind {
        PlaneKind::Op2 => op2_steps(&target.u, &target.v),
        PlaneKind::ParaOp2 => para_steps(&target.u, &target.v, 0)?,
        PlaneKind::Op11 => op11_steps(&target.u, &target.v),
        PlaneKind::Oh2 => oh2_steps(&target.u, &target.v),
    };
    Ok(IsometryComposition::new(steps))
}

fn swap_step(kind_algebra: crate::algebra::AlgebraKind) -> IsometryStep {
    IsometryStep::euclidean(Chart::U1, 0.0, HyperNumber::one(kind_algebra))
}

fn op2_steps(a: &HyperNumber, b: &HyperNumber) -> Vec<IsometryStep> {
    let (na, nb) = (a.norm_sq(), b.norm_sq());
    let r = (na + nb).sqrt();
    let mut steps = vec![IsometryStep::rotation(-r.atan())];
    if nb.sqrt() < NEGLIGIBLE {
        // [1,|a|,0] -> [1,0,a] -> [1,a,0]
        steps.push(IsometryStep::euclidean(Chart::U1, 0.0, a.conj() / na.sqrt()));
        steps.push(swap_step(a.kind()));
    } else {
        let lb = nb.sqrt();
        steps.push(IsometryStep::euclidean(Chart::U1, 0.0, -b.conj() / lb));
        steps.push(IsometryStep::euclidean(Chart::U1, lb / r, -(*a * b.conj()) / (r * lb)));
    }
    steps
}

fn para_steps(a: &HyperNumber, b: &HyperNumber, depth: u32) -> Result<Vec<IsometryStep>> {
    let algebra = a.kind();
    let (na, nb) = (a.norm_sq(), b.norm_sq());
    let sum = na + nb;
    if sum >= PARA_DIRECT_MIN {
        if nb >= na {
            return Ok(para_direct(a, b));
        }
        let mut steps = para_direct(b, a);
        steps.push(swap_step(algebra));
        return Ok(steps);
    }
    if depth > 0 {
        return Err(Error::InvalidStep("rotation did not move the para target into the direct case".into()));
    }

    // Rotate the target in the plane of the first slot and the slot of
    // smaller norm until |a|^2 + |b|^2 is close to 1, then undo the rotation.
    let swapped = na > nb;
    let (a0, b0) = if swapped { (*b, *a) } else { (*a, *b) };
    let goal = (1.0 + sum) / 2.0;
    let one = HyperNumber::one(algebra);
    let mut best: Option<(f64, f64)> = None;
    for k in 0..ROTATION_GRID {
        let t = k as f64 * std::f64::consts::PI / ROTATION_GRID as f64;
        let (s, c) = t.sin_cos();
        let n = (one * c + a0 * s).norm_sq();
        if n > EXTENSION_DENOMINATOR && best.is_none_or(|(_, err)| (n - goal).abs() < err) {
            best = Some((t, (n - goal).abs()));
        }
    }
    let (t, _) = best.ok_or(Error::NoApplicableRegion)?;
    let (s, c) = t.sin_cos();
    let inv = (one * c + a0 * s).inverse()?;
    let a1 = (a0 * c - one * s) * inv;
    let b1 = b0 * inv;
    let mut steps = para_steps(&a1, &b1, depth + 1)?;
    steps.push(IsometryStep::rotation(-t));
    if swapped {
        steps.push(swap_step(algebra));
    }
    Ok(steps)
}

/// Needs `|a|^2 + |b|^2 > 0` and `|b|^2 >= |a|^2`.
fn para_direct(a: &HyperNumber, b: &HyperNumber) -> Vec<IsometryStep> {
    let k = (a.norm_sq() + b.norm_sq()).sqrt();
    let l = b.norm_sq().sqrt();
    vec![
        IsometryStep::rotation(-k.atan()),
        IsometryStep::euclidean(Chart::U1, 0.0, b.conj() / l),
        IsometryStep::euclidean(Chart::U1, -l / k, (*a * b.conj()) / (l * k)),
    ]
}

/// Chart-2 indefinite reflection taking the base point to `[1, 0, b]`, `|b| < 1`.
fn op11_vertical(b: &HyperNumber) -> IsometryStep {
    let r = 1.0 / (1.0 - b.norm_sq()).sqrt();
    IsometryStep::indefinite(Chart::U2, r, b.conj() * r)
}

fn op11_steps(a: &HyperNumber, b: &HyperNumber) -> Vec<IsometryStep> {
    let (na, nb) = (a.norm_sq(), b.norm_sq());
    if na.sqrt() < NEGLIGIBLE {
        return vec![op11_vertical(b)];
    }
    let abs_a = na.sqrt();
    if nb < 0.5 {
        let t0 = (-abs_a / (1.0 - nb).sqrt()).atan();
        let (s, c) = t0.sin_cos();
        return vec![IsometryStep::euclidean(Chart::U3, c, a.conj() * (s / abs_a)), op11_vertical(b)];
    }
    // Reach [1, 0, b/sqrt(1+|a|^2)] first; the chart-3 reflection below maps
    // it to [1, a, b].
    let scale = (1.0 + na).sqrt();
    let mut steps = op11_steps(&HyperNumber::zero(a.kind()), &(*b / scale));
    steps.push(IsometryStep::euclidean(Chart::U3, 1.0 / scale, a.conj() / scale));
    steps
}

fn oh2_steps(a: &HyperNumber, b: &HyperNumber) -> Vec<IsometryStep> {
    let (na, nb) = (a.norm_sq(), b.norm_sq());
    let r = (na + nb).sqrt();
    let t = r.atanh();
    let (ch, sh) = (t.cosh(), t.sinh());
    if na.sqrt() < NEGLIGIBLE {
        // Straight to [1, 0, b].
        return vec![IsometryStep::indefinite(Chart::U2, ch, b.conj() * (sh / r))];
    }
    let algebra = a.kind();
    let abs_a = na.sqrt();
    vec![
        IsometryStep::indefinite(Chart::U2, ch, HyperNumber::real(algebra, sh)),
        swap_step(algebra),
        IsometryStep::euclidean(Chart::U1, 0.0, -a.conj() / abs_a),
        IsometryStep::euclidean(Chart::U1, abs_a / r, -(*b * a.conj()) / (r * abs_a)),
        swap_step(algebra),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraKind;
    use crate::plane::points_equal;

    const O: AlgebraKind = AlgebraKind::Octonion;

    fn pt(kind: PlaneKind, u: HyperNumber, v: HyperNumber) -> ChartPoint {
        ChartPoint::new(kind, Chart::U1, u, v).unwrap()
    }

    #[test]
    fn swap_reflection() {
        let kind = PlaneKind::Op2;
        let u = HyperNumber::new(O, [0.1, 0.2, -0.3, 0.0, 0.5, 0.0, 0.0, 0.7]);
        let v = HyperNumber::new(O, [-0.4, 0.0, 0.3, 0.2, 0.0, 0.1, 0.0, 0.0]);
        let image = apply_step(kind, &swap_step(O), &pt(kind, u, v)).unwrap();
        assert!(points_equal(kind, &image, &pt(kind, v, u)));
    }

    #[test]
    fn rotation_of_base_point() {
        let kind = PlaneKind::Op2;
        for t in [0.3, -1.1, 1.4, 2.5] {
            let image = apply_step(kind, &IsometryStep::rotation(t), &kind.origin()).unwrap();
            let expected = pt(kind, HyperNumber::real(O, -t.tan()), HyperNumber::zero(O));
            assert!(plane::point_distance(&image, &expected) < 1e-10, "t = {t}");
        }
    }

    #[test]
    fn step_validation() {
        let l = HyperNumber::real(O, 0.6);
        assert!(IsometryStep::euclidean(Chart::U1, 0.8, l).validate(PlaneKind::Op2).is_ok());
        assert!(IsometryStep::euclidean(Chart::U1, 0.7, l).validate(PlaneKind::Op2).is_err());
        // Charts 1 and 2 of the indefinite plane only admit indefinite reflections.
        assert!(IsometryStep::euclidean(Chart::U1, 0.8, l).validate(PlaneKind::Op11).is_err());
        assert!(IsometryStep::euclidean(Chart::U3, 0.8, l).validate(PlaneKind::Op11).is_ok());
        let l = HyperNumber::real(O, 0.75);
        assert!(IsometryStep::indefinite(Chart::U2, 1.25, l).validate(PlaneKind::Oh2).is_ok());
        assert!(IsometryStep::rotation(0.2).validate(PlaneKind::Oh2).is_err());
    }

    #[test]
    fn step_json_shape() {
        let step = IsometryStep::euclidean(Chart::U1, 0.0, HyperNumber::one(O));
        let json = serde_json::to_string(&step).unwrap();
        assert_eq!(json, r#"{"kind":"euclidean","chart":1,"r":0.0,"lambda":[1.0,0.0,0.0,0.0,0.0,0.0,0.0,0.0]}"#);
        let back: IsometryStep = serde_json::from_str(&json).unwrap();
        assert_eq!(back, step);
        let rot: IsometryStep = serde_json::from_str(r#"{"kind":"rotation","t":0.5}"#).unwrap();
        assert_eq!(rot, IsometryStep::rotation(0.5));
    }

    #[test]
    fn hyperbolic_vertical_target_is_one_reflection() {
        let t: f64 = 0.7;
        let target = pt(PlaneKind::Oh2, HyperNumber::zero(O), HyperNumber::real(O, t.tanh()));
        let comp = isometry_to(&target).unwrap();
        assert_eq!(comp.steps.len(), 1);
        let IsometryStep::Indefinite { chart, r, lambda } = comp.steps[0] else {
            panic!("expected an indefinite reflection");
        };
        assert_eq!(chart, Chart::U2);
        assert!((r - t.cosh()).abs() < 1e-12);
        assert!((lambda[0] - t.sinh()).abs() < 1e-12);
        let image = apply_composition(PlaneKind::Oh2, &comp, &PlaneKind::Oh2.origin()).unwrap();
        assert!(plane::point_distance(&image, &target) < 1e-12);
    }

    #[test]
    fn base_point_target_is_empty() {
        for kind in PlaneKind::ALL {
            assert!(isometry_to(&kind.origin()).unwrap().is_identity());
        }
    }

    #[test]
    fn op2_case_one_chain() {
        let kind = PlaneKind::Op2;
        let a = HyperNumber::new(O, [0.3, -0.2, 0.0, 0.5, 0.1, 0.0, 0.0, -0.4]);
        let target = pt(kind, a, HyperNumber::zero(O));
        let comp = isometry_to(&target).unwrap();
        assert_eq!(comp.steps.len(), 3);
        let IsometryStep::Rotation { t } = comp.steps[0] else { panic!("rotation first") };
        assert!((t.tan() + a.norm_sq().sqrt()).abs() < 1e-12);
        let image = apply_composition(kind, &comp, &kind.origin()).unwrap();
        assert!(plane::point_distance(&image, &target) < 1e-12);
    }
}
