use octoplane_core::metric::{
    coupling_block, metric_matrix, pullback_deviation, relative_min_eigenvalue, sign_matrix, signature, Signature,
};
use octoplane_core::plane::{self, Chart, PlaneKind};
use octoplane_core::tolerances::{COUPLING_IDENTITY, METRIC_SYMMETRY, PULLBACK_DEVIATION, PULLBACK_STEP};
use octoplane_core::{CouplingBlock, HyperNumber, Sampler};

fn expected_signature(kind: PlaneKind) -> Signature {
    match kind {
        PlaneKind::Op2 | PlaneKind::Oh2 => Signature { positive: 16, negative: 0, zero: 0 },
        PlaneKind::ParaOp2 | PlaneKind::Op11 => Signature { positive: 8, negative: 8, zero: 0 },
    }
}

#[test]
fn signature_is_constant_on_every_chart() {
    let mut s = Sampler::new(11);
    for kind in PlaneKind::ALL {
        for chart in Chart::ALL {
            for _ in 0..100 {
                let p = s.chart_point(kind, chart);
                let m = metric_matrix(&p).unwrap();
                assert!((m - m.transpose()).amax() <= METRIC_SYMMETRY);
                assert_eq!(signature(&m), expected_signature(kind), "{kind} {chart} at {p}");
                assert!(relative_min_eigenvalue(&m) > 1e-6, "{kind} {chart} near-degenerate at {p}");
            }
        }
    }
}

#[test]
fn projective_metric_is_positive_definite() {
    let mut s = Sampler::new(12);
    for _ in 0..1000 {
        let p = s.point(PlaneKind::Op2);
        let eig = metric_matrix(&p).unwrap().symmetric_eigenvalues();
        assert!(eig.min() > 0.0);
    }
}

#[test]
fn coupling_block_identities() {
    let mut s = Sampler::new(13);
    for kind in PlaneKind::ALL {
        let g = sign_matrix(kind.algebra());
        for _ in 0..200 {
            let (u, v) = (s.hyper(kind.algebra()), s.hyper(kind.algebra()));
            let a = coupling_block(kind, &u, &v).unwrap();
            let rhs = g * (u.norm_sq() * v.norm_sq());
            assert!((a * g * a.transpose() - rhs).amax() < COUPLING_IDENTITY);
            assert!((a.transpose() * g * a - rhs).amax() < COUPLING_IDENTITY);
            if kind != PlaneKind::ParaOp2 {
                let id = CouplingBlock::identity() * (u.norm_sq() * v.norm_sq());
                assert!((a * a.transpose() - id).amax() < COUPLING_IDENTITY);
            }
        }
    }
}

#[test]
fn transitions_preserve_the_metric() {
    let mut s = Sampler::new(14);
    for kind in PlaneKind::ALL {
        for from in Chart::ALL {
            for to in Chart::ALL {
                let mut worst: f64 = 0.0;
                for _ in 0..30 {
                    let p = s.overlap_point(kind, from, to);
                    worst = worst.max(pullback_deviation(&p, to, PULLBACK_STEP).unwrap());
                }
                assert!(worst < PULLBACK_DEVIATION, "{kind} {from}->{to}: {worst:e}");
            }
        }
    }
}

#[test]
fn transition_round_trip() {
    let mut s = Sampler::new(15);
    for kind in PlaneKind::ALL {
        for from in Chart::ALL {
            for to in Chart::ALL {
                for _ in 0..100 {
                    let p = s.overlap_point(kind, from, to);
                    let q = plane::to_chart(&p, to).unwrap();
                    let back = plane::to_chart(&q, from).unwrap();
                    let err = p.u.max_abs_diff(&back.u).max(p.v.max_abs_diff(&back.v));
                    let scale = p.u.max_abs().max(p.v.max_abs()).max(1.0);
                    assert!(err / scale < 1e-9, "{kind} {from}->{to}: {err:e}");
                }
            }
        }
    }
}

#[test]
fn overlap_violation_is_an_error() {
    let zero = HyperNumber::zero(PlaneKind::Op2.algebra());
    let p = PlaneKind::Op2.origin();
    assert!(pullback_deviation(&p, Chart::U2, PULLBACK_STEP).is_err());
    assert!(plane::transition(PlaneKind::Op2, Chart::U1, Chart::U3, &zero, &zero).is_err());
}
