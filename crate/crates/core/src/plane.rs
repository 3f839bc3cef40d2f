//! Reduced homogeneous coordinates and the three affine charts.
//!
//! A point is a triple `[a, b, c]` modulo right scaling by an admissible
//! `λ` (nonzero for the octonionic kinds, `|λ|^2 > 0` for the para-octonionic
//! plane). Each kind has a homogeneous form
//!
//! ```text
//! Q[a, b, c] = s1 |a|^2 + s2 |b|^2 + s3 |c|^2
//! ```
//!
//! and a triple belongs to the plane iff `Q > 0`. Chart `Uk` puts a 1 in slot
//! `k` and keeps the other two slots, in order, as the coordinates `(u, v)`.
//! Right scaling multiplies `Q` by `|λ|^2 > 0`, so membership is independent
//! of the representative.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraKind, HyperNumber};
use crate::error::{Error, Result};
use crate::tolerances::{NULL_NORM, POINT_EQUALITY};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PlaneKind {
    /// The octonionic projective plane.
    #[serde(rename = "op2")]
    Op2,
    /// The para-octonionic projective plane, signature (8,8).
    #[serde(rename = "para")]
    ParaOp2,
    /// The indefinite octonionic plane, signature (8,8).
    #[serde(rename = "op11")]
    Op11,
    /// The octonionic hyperbolic plane (the unit ball in chart 1).
    #[serde(rename = "oh2")]
    Oh2,
}

impl PlaneKind {
    pub const ALL: [PlaneKind; 4] = [PlaneKind::Op2, PlaneKind::ParaOp2, PlaneKind::Op11, PlaneKind::Oh2];

    pub const fn algebra(self) -> AlgebraKind {
        match self {
            PlaneKind::ParaOp2 => AlgebraKind::ParaOctonion,
            _ => AlgebraKind::Octonion,
        }
    }

    /// Signs of the homogeneous form, one per slot.
    pub const fn slot_signs(self) -> [f64; 3] {
        match self {
            PlaneKind::Op2 | PlaneKind::ParaOp2 => [1.0, 1.0, 1.0],
            PlaneKind::Op11 => [1.0, 1.0, -1.0],
            PlaneKind::Oh2 => [1.0, -1.0, -1.0],
        }
    }

    /// Overall sign of the metric in terms of the homogeneous form.
    pub(crate) const fn metric_sign(self) -> f64 {
        match self {
            PlaneKind::Oh2 => -1.0,
            _ => 1.0,
        }
    }

    /// Short name used on the command line and in reports.
    pub const fn name(self) -> &'static str {
        match self {
            PlaneKind::Op2 => "op2",
            PlaneKind::ParaOp2 => "para",
            PlaneKind::Op11 => "op11",
            PlaneKind::Oh2 => "oh2",
        }
    }

    pub fn parse(name: &str) -> Result<PlaneKind> {
        PlaneKind::ALL
            .into_iter()
            .find(|k| k.name() == name)
            .ok_or_else(|| Error::Parse(format!("unknown plane kind `{name}`")))
    }

    pub fn origin(self) -> ChartPoint {
        let zero = HyperNumber::zero(self.algebra());
        ChartPoint { kind: self, chart: Chart::U1, u: zero, v: zero }
    }

    /// Whether `x` may be used to rescale a representative.
    pub(crate) fn admissible_scale(self, x: &HyperNumber) -> bool {
        let n = x.norm_sq();
        match self {
            PlaneKind::ParaOp2 => n > NULL_NORM,
            _ => n.abs() > NULL_NORM,
        }
    }
}

impl fmt::Display for PlaneKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum Chart {
    U1,
    U2,
    U3,
}

impl Chart {
    pub const ALL: [Chart; 3] = [Chart::U1, Chart::U2, Chart::U3];

    /// Slot index (0-based) holding the 1.
    pub const fn pivot(self) -> usize {
        match self {
            Chart::U1 => 0,
            Chart::U2 => 1,
            Chart::U3 => 2,
        }
    }

    /// Slot indices of `u` and `v`.
    pub const fn coordinate_slots(self) -> [usize; 2] {
        match self {
            Chart::U1 => [1, 2],
            Chart::U2 => [0, 2],
            Chart::U3 => [0, 1],
        }
    }

    pub const fn number(self) -> u8 {
        self.pivot() as u8 + 1
    }

    pub const fn from_pivot(slot: usize) -> Chart {
        match slot {
            0 => Chart::U1,
            1 => Chart::U2,
            _ => Chart::U3,
        }
    }
}

impl TryFrom<u8> for Chart {
    type Error = Error;

    fn try_from(n: u8) -> Result<Chart> {
        match n {
            1 => Ok(Chart::U1),
            2 => Ok(Chart::U2),
            3 => Ok(Chart::U3),
            other => Err(Error::UnknownChart(other)),
        }
    }
}

impl From<Chart> for u8 {
    fn from(c: Chart) -> u8 {
        c.number()
    }
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "U{}", self.number())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HomogeneousTriple {
    pub slots: [HyperNumber; 3],
}

impl HomogeneousTriple {
    pub fn new(a: HyperNumber, b: HyperNumber, c: HyperNumber) -> Self {
        HomogeneousTriple { slots: [a, b, c] }
    }

    pub fn algebra(&self) -> AlgebraKind {
        self.slots[0].kind()
    }

    /// `Q[a, b, c]` for the given kind.
    pub fn form(&self, kind: PlaneKind) -> f64 {
        let s = kind.slot_signs();
        (0..3).map(|i| s[i] * self.slots[i].norm_sq()).sum()
    }

    /// `[aλ, bλ, cλ]`.
    pub fn scale_right(&self, lambda: &HyperNumber) -> Self {
        HomogeneousTriple { slots: self.slots.map(|s| s * *lambda) }
    }

    pub fn coeff_arrays(&self) -> [[f64; 8]; 3] {
        self.slots.map(|s| *s.coeffs())
    }

    pub fn from_coeff_arrays(algebra: AlgebraKind, arrays: [[f64; 8]; 3]) -> Self {
        HomogeneousTriple { slots: arrays.map(|c| HyperNumber::new(algebra, c)) }
    }

    /// Parses `[[8 reals], [8 reals], [8 reals]]`.
    pub fn parse(algebra: AlgebraKind, text: &str) -> Result<Self> {
        let arrays: [[f64; 8]; 3] = serde_json::from_str(text).map_err(|e| Error::Parse(format!("triple: {e}")))?;
        Ok(HomogeneousTriple::from_coeff_arrays(algebra, arrays))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.coeff_arrays()).expect("arrays of floats serialize")
    }
}

/// A point of a plane in one of its affine charts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChartPoint {
    pub kind: PlaneKind,
    pub chart: Chart,
    pub u: HyperNumber,
    pub v: HyperNumber,
}

impl ChartPoint {
    /// Checked constructor: the coordinates must lie inside the chart.
    pub fn new(kind: PlaneKind, chart: Chart, u: HyperNumber, v: HyperNumber) -> Result<Self> {
        if chart_contains(kind, chart, &u, &v)? {
            Ok(ChartPoint { kind, chart, u, v })
        } else {
            Err(Error::OutsideDomain { kind, chart })
        }
    }

    pub fn triple(&self) -> HomogeneousTriple {
        triple_from(self.chart, self.u, self.v)
    }

    /// Coordinates as a 16-vector `(u_1..u_8, v_1..v_8)`.
    pub fn coords(&self) -> [f64; 16] {
        join(&self.u, &self.v)
    }

    /// Shifts the coordinates without checking the chart domain.
    pub(crate) fn with_coords(&self, coords: &[f64; 16]) -> ChartPoint {
        let (u, v) = split(self.kind.algebra(), coords);
        ChartPoint { u, v, ..*self }
    }

    pub fn is_origin(&self) -> bool {
        self.chart == Chart::U1 && self.u.is_zero() && self.v.is_zero()
    }
}

impl fmt::Display for ChartPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} u={} v={}", self.kind, self.chart, self.u, self.v)
    }
}

pub(crate) fn triple_from(chart: Chart, u: HyperNumber, v: HyperNumber) -> HomogeneousTriple {
    let one = HyperNumber::one(u.kind());
    match chart {
        Chart::U1 => HomogeneousTriple::new(one, u, v),
        Chart::U2 => HomogeneousTriple::new(u, one, v),
        Chart::U3 => HomogeneousTriple::new(u, v, one),
    }
}

pub(crate) fn join(u: &HyperNumber, v: &HyperNumber) -> [f64; 16] {
    let mut out = [0.0; 16];
    out[..8].copy_from_slice(u.coeffs());
    out[8..].copy_from_slice(v.coeffs());
    out
}

pub(crate) fn split(algebra: AlgebraKind, coords: &[f64; 16]) -> (HyperNumber, HyperNumber) {
    let mut u = [0.0; 8];
    let mut v = [0.0; 8];
    u.copy_from_slice(&coords[..8]);
    v.copy_from_slice(&coords[8..]);
    (HyperNumber::new(algebra, u), HyperNumber::new(algebra, v))
}

fn check_algebra(kind: PlaneKind, x: &HyperNumber) -> Result<()> {
    if x.kind() == kind.algebra() {
        Ok(())
    } else {
        Err(Error::KindMismatch { left: kind.algebra(), right: x.kind() })
    }
}

/// Homogeneous form of the chart point `(u, v)` in `chart`.
pub(crate) fn chart_form(kind: PlaneKind, chart: Chart, u: &HyperNumber, v: &HyperNumber) -> f64 {
    let s = kind.slot_signs();
    let [su, sv] = chart.coordinate_slots().map(|i| s[i]);
    s[chart.pivot()] + su * u.norm_sq() + sv * v.norm_sq()
}

/// Whether `(u, v)` lies in chart `chart` of `kind`.
pub fn chart_contains(kind: PlaneKind, chart: Chart, u: &HyperNumber, v: &HyperNumber) -> Result<bool> {
    check_algebra(kind, u)?;
    check_algebra(kind, v)?;
    Ok(chart_form(kind, chart, u, v) > 0.0)
}

/// Same as [`chart_contains`] with the chart given by number.
pub fn chart_contains_numbered(kind: PlaneKind, chart: u8, u: &HyperNumber, v: &HyperNumber) -> Result<bool> {
    chart_contains(kind, Chart::try_from(chart)?, u, v)
}

/// Rescales `triple` so that slot `chart.pivot()` becomes 1.
fn rescale_to(kind: PlaneKind, triple: &HomogeneousTriple, chart: Chart) -> Option<(HyperNumber, HyperNumber)> {
    let pivot = triple.slots[chart.pivot()];
    if !kind.admissible_scale(&pivot) {
        return None;
    }
    let inv = pivot.inverse().ok()?;
    let [i, j] = chart.coordinate_slots();
    let u = triple.slots[i] * inv;
    let v = triple.slots[j] * inv;
    chart_form(kind, chart, &u, &v).gt(&0.0).then_some((u, v))
}

/// Change of coordinates from `from` to `to`.
pub fn transition(
    kind: PlaneKind,
    from: Chart,
    to: Chart,
    u: &HyperNumber,
    v: &HyperNumber,
) -> Result<(HyperNumber, HyperNumber)> {
    check_algebra(kind, u)?;
    check_algebra(kind, v)?;
    if from == to {
        return Ok((*u, *v));
    }
    rescale_to(kind, &triple_from(from, *u, *v), to).ok_or(Error::OverlapViolation { from, to })
}

/// Moves a chart point to another chart.
pub fn to_chart(p: &ChartPoint, chart: Chart) -> Result<ChartPoint> {
    let (u, v) = transition(p.kind, p.chart, chart, &p.u, &p.v)?;
    Ok(ChartPoint { kind: p.kind, chart, u, v })
}

/// Chart point for a triple.
///
/// A triple that already has a slot equal to 1 keeps that chart (the lowest
/// such slot). Otherwise the lowest chart whose pivot is admissible is used.
pub fn normalize(kind: PlaneKind, triple: &HomogeneousTriple) -> Result<ChartPoint> {
    for x in &triple.slots {
        check_algebra(kind, x)?;
    }
    let one = HyperNumber::one(kind.algebra());
    let already = Chart::ALL.into_iter().find(|c| triple.slots[c.pivot()] == one);
    already
        .into_iter()
        .chain(Chart::ALL)
        .find_map(|chart| rescale_to(kind, triple, chart).map(|(u, v)| ChartPoint { kind, chart, u, v }))
        .ok_or(Error::NotRepresentable(kind))
}

/// Chart point for a triple in the chart where its coordinates are smallest.
///
/// For the definite algebra this is the slot of largest norm. In the para
/// plane a slot can have large norm and still a badly conditioned inverse,
/// so the coordinates themselves are compared.
pub fn normalize_best(kind: PlaneKind, triple: &HomogeneousTriple) -> Result<ChartPoint> {
    for x in &triple.slots {
        check_algebra(kind, x)?;
    }
    if kind == PlaneKind::Oh2 {
        // The ball model is the native chart of the hyperbolic plane.
        if let Some((u, v)) = rescale_to(kind, triple, Chart::U1) {
            return Ok(ChartPoint { kind, chart: Chart::U1, u, v });
        }
    }
    Chart::ALL
        .into_iter()
        .filter_map(|chart| rescale_to(kind, triple, chart).map(|(u, v)| ChartPoint { kind, chart, u, v }))
        .min_by(|p, q| p.u.max_abs().max(p.v.max_abs()).total_cmp(&q.u.max_abs().max(q.v.max_abs())))
        .ok_or(Error::NotRepresentable(kind))
}

/// The chart in which `p` has the smallest coordinates.
pub fn best_chart(p: &ChartPoint) -> Chart {
    normalize_best(p.kind, &p.triple()).map_or(p.chart, |q| q.chart)
}

/// Relative componentwise distance after moving both points to a common chart.
///
/// Returns infinity when no common chart exists, which for points of the
/// same plane means they are different.
pub fn point_distance(p: &ChartPoint, q: &ChartPoint) -> f64 {
    if p.kind != q.kind {
        return f64::INFINITY;
    }
    let chart = best_chart(p);
    let (Ok(p), Ok(q)) = (to_chart(p, chart), to_chart(q, chart)) else {
        return f64::INFINITY;
    };
    p.coords().iter().zip(q.coords()).fold(0.0, |m, (a, b)| m.max((a - b).abs() / a.abs().max(1.0)))
}

/// Equivalence of two points up to admissible right scaling.
pub fn points_equal(kind: PlaneKind, p: &ChartPoint, q: &ChartPoint) -> bool {
    p.kind == kind && q.kind == kind && point_distance(p, q) <= POINT_EQUALITY
}

#[cfg(test)]
mod tests {
    use super::*;

    const O: AlgebraKind = AlgebraKind::Octonion;
    const P: AlgebraKind = AlgebraKind::ParaOctonion;

    fn x(kind: AlgebraKind, n: usize) -> HyperNumber {
        HyperNumber::basis(kind, n - 1)
    }

    #[test]
    fn domain_inequalities() {
        let zero = HyperNumber::zero(O);
        assert!(chart_contains(PlaneKind::Oh2, Chart::U1, &zero, &zero).unwrap());
        assert!(!chart_contains(PlaneKind::Op11, Chart::U1, &zero, &(x(O, 1) * 2.0)).unwrap());
        let pz = HyperNumber::zero(P);
        assert!(!chart_contains(PlaneKind::ParaOp2, Chart::U1, &pz, &(x(P, 5) * 2.0)).unwrap());
        let big = x(O, 3) * 1e6;
        assert!(chart_contains(PlaneKind::Op2, Chart::U3, &big, &big).unwrap());
        assert!(matches!(chart_contains_numbered(PlaneKind::Op2, 4, &zero, &zero), Err(Error::UnknownChart(4))));
        assert!(chart_contains(PlaneKind::Op2, Chart::U1, &pz, &zero).is_err());
    }

    #[test]
    fn transitions_match_examples() {
        let one = HyperNumber::one(O);
        let zero = HyperNumber::zero(O);
        let (u, v) = transition(PlaneKind::Op2, Chart::U2, Chart::U1, &one, &zero).unwrap();
        assert_eq!((u, v), (one, zero));

        let (u, v) = transition(PlaneKind::Op2, Chart::U2, Chart::U1, &x(O, 2), &x(O, 3)).unwrap();
        assert_eq!(u, -x(O, 2));
        assert_eq!(v, x(O, 4));

        let a = HyperNumber::new(O, [0.2, -0.5, 0.1, 0.0, 0.7, 0.3, -0.2, 0.4]);
        let b = HyperNumber::new(O, [-0.3, 0.6, 0.0, 0.9, -0.1, 0.2, 0.5, -0.7]);
        let (u, v) = transition(PlaneKind::Op2, Chart::U3, Chart::U1, &a, &b).unwrap();
        let ainv = a.inverse().unwrap();
        assert!(u.max_abs_diff(&(b * ainv)) < 1e-15);
        assert!(v.max_abs_diff(&ainv) < 1e-15);
    }

    #[test]
    fn transition_needs_invertible_pivot() {
        let zero = HyperNumber::zero(O);
        let err = transition(PlaneKind::Op2, Chart::U1, Chart::U2, &zero, &x(O, 1)).unwrap_err();
        assert!(matches!(err, Error::OverlapViolation { .. }));
        // A negative-norm pivot is not an admissible scale in the para plane.
        let pz = HyperNumber::zero(P);
        assert!(transition(PlaneKind::ParaOp2, Chart::U1, Chart::U2, &x(P, 5), &pz).is_err());
    }

    #[test]
    fn normalize_examples() {
        let zero = HyperNumber::zero(O);
        let p = normalize(PlaneKind::Op2, &HomogeneousTriple::new(HyperNumber::real(O, 2.0), zero, zero)).unwrap();
        assert_eq!(p, PlaneKind::Op2.origin());

        let t = HomogeneousTriple::new(x(O, 2), x(O, 3), HyperNumber::one(O));
        let p = normalize(PlaneKind::Op2, &t).unwrap();
        assert_eq!((p.chart, p.u, p.v), (Chart::U3, x(O, 2), x(O, 3)));

        let n = x(P, 2) + x(P, 6);
        let t = HomogeneousTriple::new(n, HyperNumber::one(P), HyperNumber::zero(P));
        let p = normalize(PlaneKind::ParaOp2, &t).unwrap();
        assert_eq!((p.chart, p.u, p.v), (Chart::U2, n, HyperNumber::zero(P)));

        let t = HomogeneousTriple::new(zero, zero, zero);
        assert!(matches!(normalize(PlaneKind::Op2, &t), Err(Error::NotRepresentable(_))));
    }

    #[test]
    fn equality_examples() {
        let kind = PlaneKind::Op2;
        let p = normalize(kind, &HomogeneousTriple::new(x(O, 4), -x(O, 3), x(O, 2))).unwrap();
        let q = ChartPoint::new(kind, Chart::U1, x(O, 2), x(O, 3)).unwrap();
        assert!(points_equal(kind, &p, &p));
        assert!(points_equal(kind, &p, &q));
        let origin = kind.origin();
        let r = ChartPoint::new(kind, Chart::U1, x(O, 2), HyperNumber::zero(O)).unwrap();
        assert!(!points_equal(kind, &origin, &r));
    }

    #[test]
    fn chart_serde_uses_numbers() {
        assert_eq!(serde_json::to_string(&Chart::U2).unwrap(), "2");
        assert_eq!(serde_json::from_str::<Chart>("3").unwrap(), Chart::U3);
        assert!(serde_json::from_str::<Chart>("0").is_err());
        assert_eq!(serde_json::to_string(&PlaneKind::ParaOp2).unwrap(), "\"para\"");
    }

    #[test]
    fn triple_parse_round_trip() {
        let t = HomogeneousTriple::new(x(O, 1), x(O, 5) * 0.5, -x(O, 8));
        let back = HomogeneousTriple::parse(O, &t.to_json()).unwrap();
        assert_eq!(back, t);
        assert!(HomogeneousTriple::parse(O, "[[1,2]]").is_err());
    }
}
