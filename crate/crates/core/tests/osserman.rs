use octoplane_core::curvature::{from_pair, riemann_closed_form, to_pair};
use octoplane_core::metric::origin_metric;
use octoplane_core::osserman::{
    check_special_osserman, eigenspace_bases, jacobi_from_tensor, jacobi_operator, non_isotropy_witness, origin_inner,
};
use octoplane_core::tolerances::*;
use octoplane_core::{HyperNumber, PlaneKind, Sampler, TangentVector};

fn unit_samples(kind: PlaneKind, n: usize, seed: u64) -> Vec<TangentVector> {
    let mut s = Sampler::new(seed);
    let g = origin_metric(kind);
    (0..n).map(|_| s.unit_non_null(&g)).collect()
}

#[test]
fn special_osserman_conditions_hold() {
    for kind in PlaneKind::ALL {
        let samples = unit_samples(kind, 100, 42);
        let report = check_special_osserman(kind, &samples, OSSERMAN, &mut Sampler::new(43));
        println!(
            "{kind}: spectrum {:e} I {:e} II {:e} III {:e} lambda {:e} form {:e}",
            report.spectrum.worst_residual,
            report.condition_i.worst_residual,
            report.condition_ii.worst_residual,
            report.condition_iii.worst_residual,
            report.lambda_symmetry.worst_residual,
            report.form_consistency.worst_residual
        );
        assert!(report.all_passed(), "{kind}: {:?}", report.failures);
        assert_eq!(report.condition_i.passed, 100);
        assert!(report.spectrum.worst_residual < EIGENVALUE);
    }
}

#[test]
fn both_timelike_and_spacelike_samples_occur() {
    for kind in [PlaneKind::ParaOp2, PlaneKind::Op11] {
        let eps: Vec<f64> = unit_samples(kind, 100, 42).iter().map(|v| origin_inner(kind, v, v)).collect();
        assert!(eps.iter().any(|e| *e > 0.0) && eps.iter().any(|e| *e < 0.0), "{kind}");
    }
}

#[test]
fn operator_agrees_with_curvature_form() {
    let mut s = Sampler::new(5);
    for kind in PlaneKind::ALL {
        for _ in 0..20 {
            let v = s.tangent();
            let j = jacobi_operator(kind, &v);
            assert!((j.matrix - jacobi_from_tensor(kind, &v)).amax() < JACOBI_FORM * j.matrix.amax().max(1.0));
            // g0(J_v x, y) = R(v, x, v, y)
            let (x, y) = (s.tangent(), s.tangent());
            let lhs = origin_inner(kind, &j.apply(&x), &y);
            let [vp, xp, yp] = [&v, &x, &y].map(|t| to_pair(kind, t));
            let rhs = riemann_closed_form(kind, &vp, &xp, &vp, &yp).unwrap();
            assert!((lhs - rhs).abs() < JACOBI_FORM * rhs.abs().max(1.0), "{kind}: {lhs} vs {rhs}");
            assert!(j.apply(&v).amax() < JACOBI_KERNEL * j.matrix.amax().max(1.0), "{kind}");
            assert!(j.self_adjoint_residual() < JACOBI_KERNEL * j.matrix.amax().max(1.0), "{kind}");
        }
    }
}

#[test]
fn operator_scales_quadratically() {
    let mut s = Sampler::new(9);
    for kind in PlaneKind::ALL {
        let v = s.tangent();
        let t = s.uniform(-3.0, 3.0);
        let a = jacobi_operator(kind, &(v * t)).matrix;
        let b = jacobi_operator(kind, &v).matrix * (t * t);
        assert!((a - b).amax() < 1e-12 * b.amax().max(1.0), "{kind}");
    }
}

#[test]
fn spectra_are_real() {
    for kind in PlaneKind::ALL {
        for v in unit_samples(kind, 100, 11) {
            jacobi_operator(kind, &v).eigenvalues().unwrap();
        }
    }
}

#[test]
fn indefinite_plane_uses_second_slot_pivot() {
    let kind = PlaneKind::Op11;
    let algebra = kind.algebra();
    let v = from_pair(&(HyperNumber::zero(algebra), HyperNumber::basis(algebra, 0)));
    let j = jacobi_operator(kind, &v);
    assert_eq!(j.epsilon, -1.0);
    let (l, m) = eigenspace_bases(kind, &v).unwrap();
    for w in &l {
        assert!((j.apply(w) + w * 4.0).amax() < EIGENVECTOR);
    }
    for w in &m {
        assert!((j.apply(w) + w).amax() < EIGENVECTOR);
    }
}

#[test]
fn para_lambda_basis_second_slot() {
    let kind = PlaneKind::ParaOp2;
    let v = unit_samples(kind, 50, 17)
        .into_iter()
        .find(|v| {
            let (a, b) = to_pair(kind, v);
            a.norm_sq().abs() >= b.norm_sq().abs()
        })
        .unwrap();
    let (a, b) = to_pair(kind, &v);
    let na = a.norm_sq();
    let (l, _) = eigenspace_bases(kind, &v).unwrap();
    for w in &l {
        let (c, d) = to_pair(kind, w);
        assert!((d - (b * a.conj()) * c / na).max_abs() < 1e-12);
        assert!(c.inner(&a).unwrap().abs() < 1e-12);
    }
}

#[test]
fn non_isotropy_witness_reproduces_the_argument() {
    let r = non_isotropy_witness(WITNESS);
    println!("{r:?}");
    assert_eq!(r.v_norm, 0.0);
    assert_eq!(r.w_norm, 0.0);
    assert_eq!(r.restricted_kernel_dim, 8);
    assert!(r.kernel_null_residual < WITNESS);
    assert!(r.full_operator_on_kernel < WITNESS);
    assert!(r.pass);
}
