use octoplane_core::isometry::{
    apply_composition, apply_step, candidate_routes, isometry_to, random_reflection, verify_isometry,
};
use octoplane_core::plane::{self, point_distance, Chart, ChartPoint, PlaneKind};
use octoplane_core::tolerances::{HOMOGENEITY, INVOLUTION, ISOMETRY_PULLBACK, PULLBACK_STEP, ROUTE_AGREEMENT};
use octoplane_core::{HyperNumber, IsometryComposition, IsometryStep, Sampler};

fn random_point(s: &mut Sampler, kind: PlaneKind) -> ChartPoint {
    let chart = if kind == PlaneKind::Oh2 { Chart::U1 } else { Chart::ALL[s.index(3)] };
    s.chart_point(kind, chart)
}

#[test]
fn reflections_are_isometries() {
    let mut s = Sampler::new(21);
    for kind in PlaneKind::ALL {
        let mut worst: f64 = 0.0;
        for _ in 0..20 {
            let step = random_reflection(kind, &mut s);
            let comp = IsometryComposition::new(vec![step]);
            let samples: Vec<_> = (0..10).map(|_| random_point(&mut s, kind)).collect();
            let report = verify_isometry(kind, &comp, &samples, PULLBACK_STEP).unwrap();
            assert!(report.failures.is_empty(), "{kind}: {:?}", report.failures);
            worst = worst.max(report.max_deviation);
        }
        eprintln!("{kind}: {worst:e}");
        assert!(worst < ISOMETRY_PULLBACK, "{kind}: {worst:e}");
    }
}

#[test]
fn reflections_are_involutions() {
    let mut s = Sampler::new(22);
    for kind in PlaneKind::ALL {
        let mut worst: f64 = 0.0;
        for _ in 0..50 {
            let step = random_reflection(kind, &mut s);
            for _ in 0..20 {
                let p = random_point(&mut s, kind);
                let once = apply_step(kind, &step, &p).unwrap();
                let twice = apply_step(kind, &step, &once).unwrap();
                worst = worst.max(point_distance(&p, &twice));
            }
        }
        eprintln!("{kind} involution: {worst:e}");
        assert!(worst < INVOLUTION, "{kind}: {worst:e}");
    }
}

#[test]
fn extension_routes_agree() {
    let mut s = Sampler::new(23);
    for kind in PlaneKind::ALL {
        let mut worst: f64 = 0.0;
        let mut multi = 0;
        for _ in 0..50 {
            let step = random_reflection(kind, &mut s);
            for _ in 0..20 {
                let p = random_point(&mut s, kind);
                let routes = candidate_routes(kind, &step, &p).unwrap();
                assert!(!routes.is_empty());
                if routes.len() > 1 {
                    multi += 1;
                }
                let image = apply_step(kind, &step, &p).unwrap();
                for (route, q) in &routes {
                    let d = point_distance(&image, q);
                    assert!(d < ROUTE_AGREEMENT * 100.0, "{kind} {route:?} {d:e}");
                    worst = worst.max(d);
                }
            }
        }
        eprintln!("{kind} routes: {worst:e} ({multi} multi-route points)");
    }
}

#[test]
fn homogeneity_hits_targets() {
    let mut s = Sampler::new(24);
    for kind in PlaneKind::ALL {
        let mut worst: f64 = 0.0;
        for _ in 0..200 {
            let target = s.point(kind);
            let comp = isometry_to(&target).unwrap();
            let image = apply_composition(kind, &comp, &kind.origin()).unwrap();
            worst = worst.max(point_distance(&image, &target));
        }
        eprintln!("{kind} homogeneity: {worst:e}");
        assert!(worst < HOMOGENEITY, "{kind}: {worst:e}");
    }
}

#[test]
fn para_homogeneity_on_null_and_small_targets() {
    let kind = PlaneKind::ParaOp2;
    let algebra = kind.algebra();
    let n = HyperNumber::basis(algebra, 1) + HyperNumber::basis(algebra, 5);
    let zero = HyperNumber::zero(algebra);
    let targets = [
        (n, zero),
        (zero, n),
        (n, n * 0.5),
        (HyperNumber::basis(algebra, 4) * 0.5, zero),
        (zero, HyperNumber::basis(algebra, 7) * 0.8),
        (HyperNumber::basis(algebra, 0) * 0.1, HyperNumber::basis(algebra, 6) * 0.3),
    ];
    for (a, b) in targets {
        let target = ChartPoint::new(kind, Chart::U1, a, b).unwrap();
        let comp = isometry_to(&target).unwrap();
        let image = apply_composition(kind, &comp, &kind.origin()).unwrap();
        assert!(point_distance(&image, &target) < HOMOGENEITY, "{a} {b}");
    }
}

#[test]
fn homogeneity_compositions_are_isometries() {
    let mut s = Sampler::new(25);
    for kind in PlaneKind::ALL {
        let target = s.point(kind);
        let comp = isometry_to(&target).unwrap();
        let samples: Vec<_> = (0..10).map(|_| random_point(&mut s, kind)).collect();
        let report = verify_isometry(kind, &comp, &samples, PULLBACK_STEP).unwrap();
        eprintln!(
            "{kind} composition pullback: {:e} ({:e} relative)",
            report.max_deviation, report.max_relative_deviation
        );
        assert!(report.max_relative_deviation < 1e-8, "{kind}");
        if kind != PlaneKind::ParaOp2 {
            assert!(report.max_deviation < ISOMETRY_PULLBACK, "{kind}");
        }
    }
}

#[test]
fn identity_composition_has_zero_deviation() {
    let mut s = Sampler::new(26);
    let samples: Vec<_> = (0..5).map(|_| s.point(PlaneKind::Op2)).collect();
    let report = verify_isometry(PlaneKind::Op2, &IsometryComposition::default(), &samples, PULLBACK_STEP).unwrap();
    assert_eq!(report.max_deviation, 0.0);
    assert_eq!(report.evaluated, 5);
}

#[test]
fn norm_conservation_in_chart() {
    let mut s = Sampler::new(27);
    for kind in PlaneKind::ALL {
        for _ in 0..200 {
            let step = random_reflection(kind, &mut s);
            let (chart, indefinite) = match step {
                IsometryStep::Euclidean { chart, .. } => (chart, false),
                IsometryStep::Indefinite { chart, .. } => (chart, true),
                IsometryStep::Rotation { .. } => unreachable!(),
            };
            let p = s.chart_point(kind, chart);
            let Ok(image) = apply_step(kind, &step, &p) else { panic!("step failed") };
            let image = plane::to_chart(&image, chart).unwrap();
            let before = if indefinite { p.u.norm_sq() - p.v.norm_sq() } else { p.u.norm_sq() + p.v.norm_sq() };
            let after =
                if indefinite { image.u.norm_sq() - image.v.norm_sq() } else { image.u.norm_sq() + image.v.norm_sq() };
            assert!((before - after).abs() < 1e-10 * before.abs().max(1.0), "{kind} {chart}");
        }
    }
}
