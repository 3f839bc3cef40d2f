//! Verification suites and their reports.
//!
//! Every suite draws its samples from a seeded generator, so the same
//! configuration always yields the same report. Wall time is kept out of
//! the serialized form.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::algebra::{associator, re_triple, structure_table, AlgebraKind, HyperNumber};
use crate::curvature::{self, riemann_closed_form, TangentPair};
use crate::error::{Error, Result};
use crate::isometry::{self, apply_composition, apply_step, isometry_to, random_reflection, verify_isometry};
use crate::metric::{coupling_block, metric_matrix, pullback_deviation, sign_matrix, signature, Signature};
use crate::osserman::{self, check_special_osserman, WitnessReport};
use crate::plane::{self, point_distance, Chart, ChartPoint, PlaneKind};
use crate::sampling::Sampler;
use crate::tolerances::*;
use crate::{IsometryComposition, IsometryStep};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Algebra,
    Metric,
    Isometry,
    Curvature,
    Osserman,
    Spectrum,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::Algebra, Suite::Metric, Suite::Isometry, Suite::Curvature, Suite::Osserman, Suite::Spectrum];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Metric => "metric",
            Suite::Isometry => "isometry",
            Suite::Curvature => "curvature",
            Suite::Osserman => "osserman",
            Suite::Spectrum => "spectrum",
        }
    }

    pub fn parse(name: &str) -> Result<Suite> {
        Suite::ALL.into_iter().find(|s| s.name() == name).ok_or_else(|| Error::Parse(format!("unknown suite {name:?}")))
    }
}

impl std::fmt::Display for Suite {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunConfig {
    pub seed: u64,
    pub samples: usize,
    /// Replaces every check's default tolerance.
    pub tol: Option<f64>,
    /// Replaces the suite's finite-difference step.
    pub fd_step: Option<f64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { seed: 42, samples: 100, tol: None, fd_step: None }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    /// The property being checked.
    pub anchor: String,
    pub pass: bool,
    pub worst_residual: f64,
    pub tolerance: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub suite: Suite,
    pub plane: PlaneKind,
    pub seed: u64,
    pub samples: usize,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessReport>,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl VerificationReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass) && self.witness.as_ref().is_none_or(|w| w.pass)
    }
}

struct Builder<'a> {
    cfg: &'a RunConfig,
    checks: Vec<Check>,
}

impl Builder<'_> {
    fn check(&mut self, name: &str, anchor: &str, residual: f64, default_tol: f64) {
        let tolerance = self.cfg.tol.unwrap_or(default_tol);
        self.checks.push(Check {
            name: name.to_string(),
            anchor: anchor.to_string(),
            pass: residual <= tolerance,
            worst_residual: residual,
            tolerance,
        });
    }

    /// A check that counts failures; it passes only with none.
    fn count(&mut self, name: &str, anchor: &str, failures: usize) {
        self.checks.push(Check {
            name: name.to_string(),
            anchor: anchor.to_string(),
            pass: failures == 0,
            worst_residual: failures as f64,
            tolerance: 0.0,
        });
    }
}

/// Runs one suite for one plane.
pub fn run_suite(suite: Suite, kind: PlaneKind, cfg: &RunConfig) -> VerificationReport {
    let start = Instant::now();
    let mut b = Builder { cfg, checks: Vec::new() };
    let mut witness = None;
    match suite {
        Suite::Algebra => algebra_suite(kind, &mut b),
        Suite::Metric => metric_suite(kind, &mut b),
        Suite::Isometry => isometry_suite(kind, &mut b),
        Suite::Curvature => curvature_suite(kind, &mut b),
        Suite::Osserman => witness = osserman_suite(kind, &mut b),
        Suite::Spectrum => spectrum_suite(kind, &mut b),
    }
    VerificationReport {
        suite,
        plane: kind,
        seed: cfg.seed,
        samples: cfg.samples,
        checks: b.checks,
        witness,
        wall_time: start.elapsed(),
    }
}

fn sampler(cfg: &RunConfig, kind: PlaneKind, suite: Suite) -> Sampler {
    // Distinct streams per plane and suite, all fixed by the seed.
    let k = PlaneKind::ALL.iter().position(|x| *x == kind).unwrap_or(0) as u64;
    let s = Suite::ALL.iter().position(|x| *x == suite).unwrap_or(0) as u64;
    Sampler::new(cfg.seed.wrapping_mul(1_000_003).wrapping_add(16 * s + k))
}

/// Residuals of the algebra identities on one quadruple, in the order of
/// [`ALGEBRA_IDENTITY_NAMES`].
pub fn algebra_identity_residuals(a: &HyperNumber, b: &HyperNumber, c: &HyperNumber, d: &HyperNumber) -> [f64; 10] {
    let (a, b, c, d) = (*a, *b, *c, *d);
    let ip = |x: &HyperNumber, y: &HyperNumber| x.inner_unchecked(y);
    let assoc = |x, y, z| associator(x, y, z).expect("same algebra");
    let abc = assoc(&a, &b, &c);
    let triple = |x, y, z| re_triple(x, y, z).expect("same algebra");
    [
        ((a * b).norm_sq() - a.norm_sq() * b.norm_sq()).abs(),
        (abc + assoc(&b, &a, &c))
            .max_abs()
            .max((abc + assoc(&a, &c, &b)).max_abs())
            .max((abc + assoc(&c, &b, &a)).max_abs()),
        abc.re().abs(),
        ((a * b).re() - (b * a).re()).abs(),
        (triple(&a, &b, &c) - triple(&b, &c, &a)).abs().max((triple(&a, &b, &c) - triple(&c, &a, &b)).abs()),
        ((a * b) * (c * a))
            .max_abs_diff(&((a * (b * c)) * a))
            .max(((a * b) * (c * a)).max_abs_diff(&(a * ((b * c) * a)))),
        (ip(&(a * c), &d) - ip(&c, &(a.conj() * d))).abs(),
        (ip(&(a * c), &(a * d)) - a.norm_sq() * ip(&c, &d)).abs(),
        (ip(&(a * b.conj()), &(c * d.conj())) + ip(&(a * d.conj()), &(c * b.conj())) - 2.0 * ip(&a, &c) * ip(&b, &d))
            .abs(),
        (ip(&a, &b) - (a * b.conj()).re()).abs(),
    ]
}

pub const ALGEBRA_IDENTITY_NAMES: [(&str, &str); 10] = [
    ("composition", "|ab|^2 = |a|^2 |b|^2"),
    ("alternativity", "associator is antisymmetric"),
    ("purity", "Re[a, b, c] = 0"),
    ("re_symmetry", "Re[ab] = Re[ba]"),
    ("cyclic_re", "Re[abc] is cyclic"),
    ("moufang", "(ab)(ca) = a(bc)a"),
    ("adjointness", "<ax, y> = <x, conj(a) y>"),
    ("norm_scaling", "<ax, ay> = |a|^2 <x, y>"),
    ("exchange", "<a b̄, c d̄> + <a d̄, c b̄> = 2<a, c><b, d>"),
    ("inner_product", "<a, b> = Re[a b̄]"),
];

fn algebra_suite(kind: PlaneKind, b: &mut Builder) {
    let algebra = kind.algebra();
    let mut s = sampler(b.cfg, kind, Suite::Algebra);

    let table = structure_table(algebra);
    let mut table_diff: f64 = 0.0;
    for i in 0..8 {
        for j in 0..8 {
            let (x, y) = (HyperNumber::basis(algebra, i), HyperNumber::basis(algebra, j));
            table_diff = table_diff.max((x * y).max_abs_diff(&table.multiply(&x, &y)));
        }
    }
    b.check("structure_table", "product agrees with the 64-entry table", table_diff, ALGEBRA_IDENTITY);

    if algebra == AlgebraKind::Octonion {
        let x = |n| HyperNumber::basis(algebra, n);
        let (i, j, l, kl) = (x(1), x(2), x(4), x(7));
        let r = ((i * j) * l).max_abs_diff(&kl).max((i * (j * l)).max_abs_diff(&-kl));
        b.check("associativity_failure", "(ij)l = kl and i(jl) = -kl", r, ALGEBRA_IDENTITY);
    } else {
        let mut r: f64 = 0.0;
        for n in 1..8 {
            let x = HyperNumber::basis(algebra, n);
            let want = if n < 4 { -1.0 } else { 1.0 };
            r = r.max((x * x).max_abs_diff(&HyperNumber::real(algebra, want)));
        }
        b.check("unit_squares", "(q,0)^2 = -1 and (0,w)^2 = 1", r, ALGEBRA_IDENTITY);
    }

    let mut worst = [0.0f64; 10];
    for _ in 0..100 * b.cfg.samples {
        let q = [s.hyper(algebra), s.hyper(algebra), s.hyper(algebra), s.hyper(algebra)];
        for (w, r) in worst.iter_mut().zip(algebra_identity_residuals(&q[0], &q[1], &q[2], &q[3])) {
            *w = w.max(r);
        }
    }
    for ((name, anchor), w) in ALGEBRA_IDENTITY_NAMES.iter().zip(worst) {
        b.check(name, anchor, w, ALGEBRA_IDENTITY);
    }
}

fn expected_signature(kind: PlaneKind) -> Signature {
    match kind {
        PlaneKind::Op2 | PlaneKind::Oh2 => Signature { positive: 16, negative: 0, zero: 0 },
        PlaneKind::ParaOp2 | PlaneKind::Op11 => Signature { positive: 8, negative: 8, zero: 0 },
    }
}

fn charts(kind: PlaneKind) -> &'static [Chart] {
    // The hyperbolic plane lies inside chart 1.
    if kind == PlaneKind::Oh2 {
        &[Chart::U1]
    } else {
        &Chart::ALL
    }
}

fn metric_suite(kind: PlaneKind, b: &mut Builder) {
    let mut s = sampler(b.cfg, kind, Suite::Metric);
    let step = b.cfg.fd_step.unwrap_or(PULLBACK_STEP);
    let n = b.cfg.samples;

    let mut symmetry: f64 = 0.0;
    let mut wrong_signature = 0;
    for &chart in charts(kind) {
        for _ in 0..n {
            let p = s.chart_point(kind, chart);
            match metric_matrix(&p) {
                Ok(m) => {
                    symmetry = symmetry.max((m - m.transpose()).amax());
                    if signature(&m) != expected_signature(kind) {
                        wrong_signature += 1;
                    }
                }
                Err(_) => wrong_signature += 1,
            }
        }
    }
    b.check("symmetry", "metric matrix is symmetric", symmetry, METRIC_SYMMETRY);
    b.count("signature", "signature is constant on every chart", wrong_signature);

    let g = sign_matrix(kind.algebra());
    let mut coupling: f64 = 0.0;
    for _ in 0..n {
        let (u, v) = (s.hyper(kind.algebra()), s.hyper(kind.algebra()));
        let a = coupling_block(kind, &u, &v).expect("same algebra");
        let rhs = g * (u.norm_sq() * v.norm_sq());
        coupling = coupling.max((a * g * a.transpose() - rhs).amax()).max((a.transpose() * g * a - rhs).amax());
    }
    b.check("coupling_identity", "A G A^T = |u|^2 |v|^2 G", coupling, COUPLING_IDENTITY);

    let mut pullback: f64 = 0.0;
    let mut round_trip: f64 = 0.0;
    let per_pair = n.div_ceil(2).max(1);
    for &from in charts(kind) {
        for &to in charts(kind) {
            if from == to {
                continue;
            }
            for _ in 0..per_pair {
                let p = s.overlap_point(kind, from, to);
                pullback = pullback.max(pullback_deviation(&p, to, step).unwrap_or(f64::INFINITY));
                let back = plane::to_chart(&p, to).and_then(|q| plane::to_chart(&q, from));
                round_trip = round_trip.max(back.map(|q| point_distance(&p, &q)).unwrap_or(f64::INFINITY));
            }
        }
    }
    b.check("pullback", "transition maps pull back the metric", pullback, PULLBACK_DEVIATION);
    b.check("round_trip", "transitions compose to the identity", round_trip, TRANSITION_ROUND_TRIP);
}

fn random_point(s: &mut Sampler, kind: PlaneKind) -> ChartPoint {
    let cs = charts(kind);
    let chart = cs[s.index(cs.len())];
    s.chart_point(kind, chart)
}

fn isometry_suite(kind: PlaneKind, b: &mut Builder) {
    let mut s = sampler(b.cfg, kind, Suite::Isometry);
    let step = b.cfg.fd_step.unwrap_or(PULLBACK_STEP);
    let reflections = b.cfg.samples.div_ceil(2).max(1);
    let points = reflections;

    let mut pullback: f64 = 0.0;
    let mut involution: f64 = 0.0;
    let mut norm: f64 = 0.0;
    for _ in 0..reflections {
        let refl = random_reflection(kind, &mut s);
        let samples: Vec<ChartPoint> = (0..points).map(|_| random_point(&mut s, kind)).collect();
        let comp = IsometryComposition::new(vec![refl]);
        pullback = pullback.max(match verify_isometry(kind, &comp, &samples, step) {
            Ok(r) if r.failures.is_empty() => r.max_deviation,
            _ => f64::INFINITY,
        });
        for p in &samples {
            let twice = apply_step(kind, &refl, p).and_then(|q| apply_step(kind, &refl, &q));
            involution = involution.max(twice.map(|q| point_distance(p, &q)).unwrap_or(f64::INFINITY));
        }
        norm = norm.max(norm_conservation(kind, &refl, &mut s));
    }
    b.check("pullback", "reflections preserve the metric", pullback, ISOMETRY_PULLBACK);
    b.check("involution", "reflections are involutions", involution, INVOLUTION);
    b.check("norm_conservation", "reflections preserve the chart norm", norm, NORM_CONSERVATION);

    if isometry::euclidean_chart(kind, Chart::U3) {
        let mut worst: f64 = 0.0;
        for t in [0.1, 0.5, 1.0, -0.7] {
            let image = apply_step(kind, &IsometryStep::rotation(t), &kind.origin())
                .and_then(|q| plane::to_chart(&q, Chart::U1));
            let want = HyperNumber::real(kind.algebra(), -f64::tan(t));
            worst = worst.max(match image {
                Ok(q) => q.u.max_abs_diff(&want).max(q.v.max_abs()),
                Err(_) => f64::INFINITY,
            });
        }
        b.check("rotation_example", "rotation sends [1,0,0] to [1,-tan t,0]", worst, ROTATION_EXAMPLE);
    }

    let mut homogeneity: f64 = 0.0;
    for _ in 0..2 * b.cfg.samples {
        let target = s.point(kind);
        let hit = isometry_to(&target)
            .and_then(|comp| apply_composition(kind, &comp, &kind.origin()))
            .map(|q| point_distance(&q, &target));
        homogeneity = homogeneity.max(hit.unwrap_or(f64::INFINITY));
    }
    b.check("homogeneity", "the base point is sent to every target", homogeneity, HOMOGENEITY);
}

/// `|u|^2 ± |v|^2` before and after a reflection, in the reflection's chart.
fn norm_conservation(kind: PlaneKind, step: &IsometryStep, s: &mut Sampler) -> f64 {
    let (chart, sign) = match *step {
        IsometryStep::Euclidean { chart, .. } => (chart, 1.0),
        IsometryStep::Indefinite { chart, .. } => (chart, -1.0),
        IsometryStep::Rotation { .. } => return 0.0,
    };
    let p = s.chart_point(kind, chart);
    let Ok(image) = apply_step(kind, step, &p).and_then(|q| plane::to_chart(&q, chart)) else {
        return f64::INFINITY;
    };
    let before = p.u.norm_sq() + sign * p.v.norm_sq();
    let after = image.u.norm_sq() + sign * image.v.norm_sq();
    (before - after).abs() / before.abs().max(1.0)
}

fn curvature_suite(kind: PlaneKind, b: &mut Builder) {
    let mut s = sampler(b.cfg, kind, Suite::Curvature);
    let step = b.cfg.fd_step.unwrap_or(SECOND_JET_STEP);

    let first = curvature::first_jets_origin(kind, FIRST_JET_STEP).iter().map(|m| m.amax()).fold(0.0, f64::max);
    b.check("first_jets", "first jets vanish at the base point", first, FIRST_JET);

    let jets = curvature::second_jets_origin(kind, step);
    let mut jet_err: f64 = 0.0;
    for_each_index(|x, y, z, w| {
        jet_err = jet_err.max((jets.get(x, y, z, w) - curvature::expected_second_jet(kind, x, y, z, w)).abs());
    });
    b.check("second_jets", "second jets -4, -2 and mixed products", jet_err, SECOND_JET);

    let numeric = curvature::riemann_from_jets(&jets);
    let closed = curvature::riemann_closed_form_tensor(kind);
    let listed = curvature::listed_tensor(kind);
    b.check("numeric_vs_closed", "FD curvature matches the closed form", numeric.max_diff(&closed), CURVATURE_NUMERIC);
    b.check("listed_components", "listed components and zeros", numeric.max_diff(&listed), LISTED_COMPONENT);
    b.check("closed_vs_listed", "closed form reproduces the listing", closed.max_diff(&listed), CLOSED_FORM_SYMMETRY);
    b.check(
        "numeric_symmetries",
        "symmetries and Bianchi on the FD tensor",
        numeric.symmetry_residuals().max(),
        NUMERIC_SYMMETRY,
    );

    let mut sym: f64 = 0.0;
    for _ in 0..10 * b.cfg.samples {
        let mut pair = || -> TangentPair { (s.hyper(kind.algebra()), s.hyper(kind.algebra())) };
        let (x, y, z, w) = (pair(), pair(), pair(), pair());
        let r = |p: &TangentPair, q: &TangentPair, u: &TangentPair, v: &TangentPair| {
            riemann_closed_form(kind, p, q, u, v).expect("same algebra")
        };
        let v = r(&x, &y, &z, &w);
        sym = sym
            .max((v + r(&y, &x, &z, &w)).abs())
            .max((v + r(&x, &y, &w, &z)).abs())
            .max((v - r(&z, &w, &x, &y)).abs())
            .max((v + r(&y, &z, &x, &w) + r(&z, &x, &y, &w)).abs());
    }
    b.check("closed_form_symmetries", "symmetries and Bianchi on random vectors", sym, CLOSED_FORM_SYMMETRY);
    b.check(
        "conjugation_relabeling",
        "components under (a, conj b) relabeling",
        curvature::conjugation_relabeling_residual(kind),
        CLOSED_FORM_SYMMETRY,
    );
}

fn for_each_index(mut f: impl FnMut(usize, usize, usize, usize)) {
    for a in 0..16 {
        for b in 0..16 {
            for c in 0..16 {
                for d in 0..16 {
                    f(a, b, c, d);
                }
            }
        }
    }
}

fn osserman_suite(kind: PlaneKind, b: &mut Builder) -> Option<WitnessReport> {
    let mut s = sampler(b.cfg, kind, Suite::Osserman);
    let g = crate::metric::origin_metric(kind);
    let samples: Vec<_> = (0..b.cfg.samples).map(|_| s.unit_non_null(&g)).collect();
    let tol = b.cfg.tol.unwrap_or(OSSERMAN);
    let r = check_special_osserman(kind, &samples, tol, &mut s);
    b.check(
        "form_consistency",
        "closed-form operator equals R(v, ., v, .)",
        r.form_consistency.worst_residual,
        JACOBI_FORM,
    );
    b.check("spectrum", "spectrum {0, 4ε (7), ε (8)}", r.spectrum.worst_residual, EIGENVALUE);
    b.check("eigenvectors", "eigenspace bases are eigenvectors", r.eigenvectors.worst_residual, EIGENVECTOR);
    b.count("dimensions", "eigenspace dimensions 1, 7 and 8", r.dimensions.total - r.dimensions.passed);
    b.check("condition_i", "diagonalizable with two nonzero eigenvalues", r.condition_i.worst_residual, OSSERMAN);
    b.check("condition_ii", "E_λ(w) = E_λ(v) for unit w in E_λ(v)", r.condition_ii.worst_residual, OSSERMAN);
    b.check("condition_iii", "μ-eigenvector relation is symmetric", r.condition_iii.worst_residual, OSSERMAN);
    b.check("lambda_symmetry", "λ-eigenvector relation is symmetric", r.lambda_symmetry.worst_residual, OSSERMAN);
    if kind == PlaneKind::ParaOp2 {
        Some(osserman::non_isotropy_witness(b.cfg.tol.unwrap_or(WITNESS)))
    } else {
        None
    }
}

fn spectrum_suite(kind: PlaneKind, b: &mut Builder) {
    let mut s = sampler(b.cfg, kind, Suite::Spectrum);
    let step = b.cfg.fd_step.unwrap_or(GENERAL_POINT_STEP);
    let (lambda, mu) = osserman::eigen_constants(kind);
    let mut worst: f64 = 0.0;
    for _ in 0..b.cfg.samples.div_ceil(10).max(1) {
        let p = random_point(&mut s, kind);
        let Ok(g) = metric_matrix(&p) else {
            worst = f64::INFINITY;
            continue;
        };
        let v = s.unit_non_null(&g);
        let eps = (v.transpose() * g * v)[0].signum();
        let mut want = vec![0.0];
        want.extend([lambda * eps; 7]);
        want.extend([mu * eps; 8]);
        want.sort_by(f64::total_cmp);
        worst = worst.max(match curvature::jacobi_spectrum_at_point_with_step(&p, &v, step) {
            Ok(spectrum) => spectrum.iter().zip(&want).fold(0.0f64, |m, (x, y)| m.max((x - y).abs())),
            Err(_) => f64::INFINITY,
        });
    }
    b.check(
        "spectrum_at_points",
        "Jacobi spectrum is the same away from the base point",
        worst,
        GENERAL_POINT_SPECTRUM,
    );
}

/// A nonzero curvature component at the base point.
#[derive(Debug, Clone, Serialize)]
pub struct ComponentRecord {
    pub indices: [usize; 4],
    /// Frame labels such as `e1 f2 e1 f2`.
    pub frames: String,
    pub value: f64,
    pub expected: f64,
    pub source: &'static str,
}

fn frame_label(n: usize) -> String {
    if n < 8 {
        format!("e{}", n + 1)
    } else {
        format!("f{}", n - 7)
    }
}

/// Nonzero components of the finite-difference curvature at the base point
/// with the listed values next to them.
pub fn curvature_dump(kind: PlaneKind, step: f64) -> Vec<ComponentRecord> {
    let numeric = curvature::riemann_origin_numeric_with_step(kind, step);
    let mut out = Vec::new();
    for_each_index(|a, b, c, d| {
        let expected = curvature::listed_component(kind, a, b, c, d);
        let value = numeric.get(a, b, c, d);
        if expected != 0.0 || value.abs() > LISTED_COMPONENT {
            let f = [a, b, c, d].map(|n| n >= 8);
            let source = match f.iter().filter(|x| **x).count() {
                0 | 4 => "pure block",
                2 if f[0] == f[1] => "split pairs",
                2 => "mixed pairs",
                _ => "unlisted",
            };
            out.push(ComponentRecord {
                indices: [a, b, c, d],
                frames: [a, b, c, d].map(frame_label).join(" "),
                value,
                expected,
                source,
            });
        }
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> RunConfig {
        RunConfig { samples: 4, ..RunConfig::default() }
    }

    #[test]
    fn suites_pass_on_small_runs() {
        for suite in [Suite::Algebra, Suite::Metric, Suite::Isometry, Suite::Osserman] {
            for kind in PlaneKind::ALL {
                let r = run_suite(suite, kind, &small());
                assert!(r.pass(), "{suite} {kind}: {:?}", r.checks);
            }
        }
    }

    #[test]
    fn impossible_tolerance_fails() {
        let cfg = RunConfig { tol: Some(1e-30), samples: 1, ..RunConfig::default() };
        assert!(!run_suite(Suite::Metric, PlaneKind::Op11, &cfg).pass());
    }

    #[test]
    fn witness_only_for_para() {
        assert!(run_suite(Suite::Osserman, PlaneKind::ParaOp2, &small()).witness.is_some());
        assert!(run_suite(Suite::Osserman, PlaneKind::Op2, &small()).witness.is_none());
    }

    #[test]
    fn reports_are_deterministic() {
        let a = serde_json::to_string(&run_suite(Suite::Isometry, PlaneKind::ParaOp2, &small())).unwrap();
        let b = serde_json::to_string(&run_suite(Suite::Isometry, PlaneKind::ParaOp2, &small())).unwrap();
        assert_eq!(a, b);
        assert!(!a.contains("wall"));
    }

    #[test]
    fn dump_lists_expected_components() {
        let d = curvature_dump(PlaneKind::Op2, SECOND_JET_STEP);
        let r = d.iter().find(|r| r.indices == [0, 1, 0, 1]).unwrap();
        assert_eq!(r.expected, 4.0);
        assert_eq!(r.frames, "e1 e2 e1 e2");
        assert!(d.iter().all(|r| r.source != "unlisted"));
    }
}
