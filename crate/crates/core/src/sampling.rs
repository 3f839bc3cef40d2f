//! Seeded random inputs for the verification sweeps.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgebraKind, HyperNumber};
use crate::metric::MetricMatrix;
use crate::plane::{self, Chart, ChartPoint, PlaneKind};
use crate::tolerances::{BALL_RADIUS_SQ, NON_NULL_MARGIN, OVERLAP_PIVOT, SAMPLE_MARGIN};

/// A tangent vector in chart coordinates `(a_1..a_8, b_1..b_8)`.
pub type TangentVector = nalgebra::SVector<f64, 16>;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.random_range(lo..hi)
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.random_range(0..n)
    }

    /// Coefficients uniform in `[-1, 1]`.
    pub fn hyper(&mut self, algebra: AlgebraKind) -> HyperNumber {
        let coeffs = std::array::from_fn(|_| self.rng.random_range(-1.0..=1.0));
        HyperNumber::new(algebra, coeffs)
    }

    /// A point of `chart` whose homogeneous form is at least the sample margin.
    ///
    /// In chart 1 of the hyperbolic plane the cube is too sparse in the ball,
    /// so the cube sample is rescaled to a random squared radius below 0.8.
    pub fn chart_point(&mut self, kind: PlaneKind, chart: Chart) -> ChartPoint {
        let algebra = kind.algebra();
        loop {
            let (mut u, mut v) = (self.hyper(algebra), self.hyper(algebra));
            if kind == PlaneKind::Oh2 && chart == Chart::U1 {
                let r2 = u.norm_sq() + v.norm_sq();
                let target = BALL_RADIUS_SQ * self.rng.random::<f64>();
                let s = (target / r2).sqrt();
                u = u * s;
                v = v * s;
            }
            if plane::chart_form(kind, chart, &u, &v) >= SAMPLE_MARGIN {
                return ChartPoint { kind, chart, u, v };
            }
        }
    }

    pub fn point(&mut self, kind: PlaneKind) -> ChartPoint {
        self.chart_point(kind, Chart::U1)
    }

    /// A point of `from` that also lies well inside chart `to`.
    pub fn overlap_point(&mut self, kind: PlaneKind, from: Chart, to: Chart) -> ChartPoint {
        loop {
            let p = self.chart_point(kind, from);
            let pivot = p.triple().slots[to.pivot()];
            let n = pivot.norm_sq();
            let ok = match kind {
                PlaneKind::ParaOp2 => n > OVERLAP_PIVOT,
                _ => n.abs() > OVERLAP_PIVOT,
            };
            if ok && plane::to_chart(&p, to).is_ok() {
                return p;
            }
        }
    }

    pub fn tangent(&mut self) -> TangentVector {
        TangentVector::from_fn(|_, _| self.rng.random_range(-1.0..=1.0))
    }

    /// A tangent vector with `g(v, v) = ±1` for the metric `g`.
    pub fn unit_non_null(&mut self, g: &MetricMatrix) -> TangentVector {
        loop {
            let v = self.tangent();
            let n = (v.transpose() * g * v)[0];
            if n.abs() >= NON_NULL_MARGIN {
                return v / n.abs().sqrt();
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::origin_metric;

    #[test]
    fn same_seed_same_samples() {
        let mut a = Sampler::new(9);
        let mut b = Sampler::new(9);
        for kind in PlaneKind::ALL {
            assert_eq!(a.point(kind), b.point(kind));
        }
    }

    #[test]
    fn samples_respect_domains() {
        let mut s = Sampler::new(1);
        for kind in PlaneKind::ALL {
            for chart in Chart::ALL {
                let p = s.chart_point(kind, chart);
                assert!(plane::chart_form(kind, chart, &p.u, &p.v) >= SAMPLE_MARGIN);
            }
        }
        let p = s.point(PlaneKind::Oh2);
        assert!(p.u.norm_sq() + p.v.norm_sq() < BALL_RADIUS_SQ);
    }

    #[test]
    fn unit_vectors_are_unit() {
        let mut s = Sampler::new(3);
        let g = origin_metric(PlaneKind::ParaOp2);
        for _ in 0..20 {
            let v = s.unit_non_null(&g);
            let n = (v.transpose() * g * v)[0];
            assert!((n.abs() - 1.0).abs() < 1e-12);
        }
    }
}
