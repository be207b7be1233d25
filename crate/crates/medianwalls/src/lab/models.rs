//! Model geometries with equilateral triples and deterministic candidate
//! grids, and the tripod-defect experiment run on top of them.

use num_complex::Complex64;

use super::hyperbolic::{hyperbolic_dist, DiskPoint};
use crate::error::{Error, Result};

/// Golden angle in radians; Vogel's sunflower spacing.
const GOLDEN_ANGLE: f64 = 2.399_963_229_728_653;

/// A metric with a canonical symmetric triple at every scale and a
/// deterministic low-discrepancy candidate sample for median searches.
pub trait ModelMetric {
    type Point: Clone;

    fn dist(&self, a: &Self::Point, b: &Self::Point) -> f64;

    /// Three points at mutual distance `scale` (in the model's base metric
    /// for snowflaked models), arranged symmetrically.
    fn equilateral_triple(&self, scale: f64) -> [Self::Point; 3];

    /// About `count` candidate median points covering the region where the
    /// triple's near-medians can lie; deterministic in (scale, count).
    fn candidates(&self, scale: f64, count: usize) -> Vec<Self::Point>;

    /// Spacing of the candidate sample, reported with every estimate.
    fn resolution(&self, scale: f64, count: usize) -> f64;
}

/// Sunflower layout: index k of n maps to radius_scale·√((k+½)/n) and the
/// golden-angle direction. Low discrepancy over the disk of radius 1.
fn sunflower(n: usize) -> impl Iterator<Item = (f64, f64)> {
    (0..n).map(move |k| {
        let r = ((k as f64 + 0.5) / n as f64).sqrt();
        (r, k as f64 * GOLDEN_ANGLE)
    })
}

pub struct EuclideanPlane;

impl ModelMetric for EuclideanPlane {
    type Point = [f64; 2];

    fn dist(&self, a: &[f64; 2], b: &[f64; 2]) -> f64 {
        (a[0] - b[0]).hypot(a[1] - b[1])
    }

    fn equilateral_triple(&self, scale: f64) -> [[f64; 2]; 3] {
        let circum = scale / 3.0f64.sqrt();
        [0, 1, 2].map(|j| {
            let t = std::f64::consts::FRAC_PI_2 + j as f64 * std::f64::consts::TAU / 3.0;
            [circum * t.cos(), circum * t.sin()]
        })
    }

    fn candidates(&self, scale: f64, count: usize) -> Vec<[f64; 2]> {
        let radius = scale / 3.0f64.sqrt();
        let mut out = vec![[0.0, 0.0]];
        out.extend(sunflower(count).map(|(r, t)| [radius * r * t.cos(), radius * r * t.sin()]));
        out
    }

    fn resolution(&self, scale: f64, count: usize) -> f64 {
        scale / 3.0f64.sqrt() / (count as f64).sqrt()
    }
}

pub struct HyperbolicDisk;

impl HyperbolicDisk {
    /// Circumradius R of the hyperbolic equilateral triangle of side s,
    /// from cosh²R = (2 cosh s + 1)/3.
    pub fn circumradius(side: f64) -> f64 {
        ((2.0 * side.cosh() + 1.0) / 3.0).sqrt().acosh()
    }
}

impl ModelMetric for HyperbolicDisk {
    type Point = DiskPoint;

    fn dist(&self, a: &DiskPoint, b: &DiskPoint) -> f64 {
        hyperbolic_dist(*a, *b)
    }

    fn equilateral_triple(&self, scale: f64) -> [DiskPoint; 3] {
        let radius = Self::circumradius(scale);
        [0, 1, 2].map(|j| {
            let t = std::f64::consts::FRAC_PI_2 + j as f64 * std::f64::consts::TAU / 3.0;
            DiskPoint::polar(radius, t).expect("circumradius point is inside the disk")
        })
    }

    fn candidates(&self, scale: f64, count: usize) -> Vec<DiskPoint> {
        let radius = Self::circumradius(scale);
        let mut out = vec![DiskPoint::origin()];
        out.extend(
            sunflower(count)
                .map(|(r, t)| DiskPoint::polar(radius * r, t).expect("inside the disk")),
        );
        out
    }

    fn resolution(&self, scale: f64, count: usize) -> f64 {
        Self::circumradius(scale) / (count as f64).sqrt()
    }
}

/// A point of the complex hyperbolic plane in the unit-ball model.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexHyperbolicPoint {
    pub z: [Complex64; 2],
}

impl ComplexHyperbolicPoint {
    pub fn new(z: [Complex64; 2]) -> Result<Self> {
        // the negated comparison also rejects NaN coordinates
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(z[0].norm_sqr() + z[1].norm_sqr() < 1.0) {
            return Err(Error::domain("point outside the unit ball"));
        }
        Ok(ComplexHyperbolicPoint { z })
    }
}

/// Scale of the ball-model metric relative to the Poincaré disk metric on a
/// complex line: the restriction to one complex coordinate agrees with the
/// disk model exactly, so the recorded normalization factor is 1.
pub const COMPLEX_HYPERBOLIC_DISK_SCALE: f64 = 1.0;

/// Bergman-type distance: cosh²(d/2) = |1 − ⟨p,q⟩|² / ((1−|p|²)(1−|q|²)).
pub fn complex_hyperbolic_dist(p: ComplexHyperbolicPoint, q: ComplexHyperbolicPoint) -> f64 {
    let inner = p.z[0] * q.z[0].conj() + p.z[1] * q.z[1].conj();
    let np = 1.0 - (p.z[0].norm_sqr() + p.z[1].norm_sqr());
    let nq = 1.0 - (q.z[0].norm_sqr() + q.z[1].norm_sqr());
    let c2 = (Complex64::new(1.0, 0.0) - inner).norm_sqr() / (np * nq);
    2.0 * c2.sqrt().acosh()
}

pub struct ComplexHyperbolicBall;

impl ComplexHyperbolicBall {
    /// Ball radius r such that the triple r·ω^j (ω = e^{2πi/3}) in the
    /// first coordinate has mutual distance `side`; the triple is
    /// equilateral because scalar rotation is an isometry.
    fn triple_radius(side: f64) -> f64 {
        let mut lo = 0.0f64;
        let mut hi = 1.0 - 1e-15;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if Self::side_at(mid) < side {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    fn side_at(r: f64) -> f64 {
        let omega = Complex64::from_polar(1.0, std::f64::consts::TAU / 3.0);
        let a = ComplexHyperbolicPoint::new([Complex64::new(r, 0.0), Complex64::new(0.0, 0.0)])
            .expect("inside ball");
        let b = ComplexHyperbolicPoint::new([omega * r, Complex64::new(0.0, 0.0)])
            .expect("inside ball");
        complex_hyperbolic_dist(a, b)
    }
}

impl ModelMetric for ComplexHyperbolicBall {
    type Point = ComplexHyperbolicPoint;

    fn dist(&self, a: &Self::Point, b: &Self::Point) -> f64 {
        complex_hyperbolic_dist(*a, *b)
    }

    fn equilateral_triple(&self, scale: f64) -> [Self::Point; 3] {
        let r = Self::triple_radius(scale);
        [0, 1, 2].map(|j| {
            let w = Complex64::from_polar(r, j as f64 * std::f64::consts::TAU / 3.0);
            ComplexHyperbolicPoint::new([w, Complex64::new(0.0, 0.0)]).expect("inside ball")
        })
    }

    /// By the rotational symmetry the near-medians lie in the complex line
    /// of the triple; sample that line with hyperbolic radial spacing.
    fn candidates(&self, scale: f64, count: usize) -> Vec<Self::Point> {
        let hyper_radius = 2.0 * Self::triple_radius(scale).atanh();
        let zero = Complex64::new(0.0, 0.0);
        let mut out = vec![ComplexHyperbolicPoint::new([zero, zero]).expect("origin")];
        out.extend(sunflower(count).map(|(r, t)| {
            let e = (hyper_radius * r / 2.0).tanh();
            ComplexHyperbolicPoint::new([Complex64::from_polar(e, t), zero]).expect("inside ball")
        }));
        out
    }

    fn resolution(&self, scale: f64, count: usize) -> f64 {
        2.0 * Self::triple_radius(scale).atanh() / (count as f64).sqrt()
    }
}

/// The base metric raised to the power alpha. `scale` arguments refer to
/// the base metric; distances returned are snowflaked.
pub struct Snowflaked<M> {
    pub base: M,
    pub alpha: f64,
}

impl<M> Snowflaked<M> {
    pub fn new(base: M, alpha: f64) -> Result<Self> {
        if !(0.0 < alpha && alpha < 1.0) {
            return Err(Error::domain("snowflake exponent must lie in (0, 1)"));
        }
        Ok(Snowflaked { base, alpha })
    }
}

impl<M: ModelMetric> ModelMetric for Snowflaked<M> {
    type Point = M::Point;

    fn dist(&self, a: &M::Point, b: &M::Point) -> f64 {
        self.base.dist(a, b).powf(self.alpha)
    }

    fn equilateral_triple(&self, scale: f64) -> [M::Point; 3] {
        self.base.equilateral_triple(scale)
    }

    fn candidates(&self, scale: f64, count: usize) -> Vec<M::Point> {
        self.base.candidates(scale, count)
    }

    fn resolution(&self, scale: f64, count: usize) -> f64 {
        self.base.resolution(scale, count)
    }
}

/// Product with the sum metric; each factor runs at half the scale so the
/// product triple again has mutual distance `scale`.
pub struct ProductModel<A, B> {
    pub left: A,
    pub right: B,
}

impl<A: ModelMetric, B: ModelMetric> ModelMetric for ProductModel<A, B> {
    type Point = (A::Point, B::Point);

    fn dist(&self, a: &Self::Point, b: &Self::Point) -> f64 {
        self.left.dist(&a.0, &b.0) + self.right.dist(&a.1, &b.1)
    }

    fn equilateral_triple(&self, scale: f64) -> [Self::Point; 3] {
        let l = self.left.equilateral_triple(scale / 2.0);
        let r = self.right.equilateral_triple(scale / 2.0);
        [0, 1, 2].map(|j| (l[j].clone(), r[j].clone()))
    }

    fn candidates(&self, scale: f64, count: usize) -> Vec<Self::Point> {
        let per_factor = (count as f64).sqrt().ceil() as usize;
        let l = self.left.candidates(scale / 2.0, per_factor);
        let r = self.right.candidates(scale / 2.0, per_factor);
        let mut out = Vec::with_capacity(l.len() * r.len());
        for a in &l {
            for b in &r {
                out.push((a.clone(), b.clone()));
            }
        }
        out
    }

    fn resolution(&self, scale: f64, count: usize) -> f64 {
        let per_factor = (count as f64).sqrt().ceil() as usize;
        self.left.resolution(scale / 2.0, per_factor)
            + self.right.resolution(scale / 2.0, per_factor)
    }
}

/// Result of one tripod-defect search.
#[derive(Clone, Copy, Debug)]
pub struct DefectEstimate {
    pub scale: f64,
    pub defect: f64,
    pub candidates: usize,
    pub resolution: f64,
}

/// Minimum over the candidate sample of the maximum pairwise betweenness
/// defect for the model's equilateral triple at the given scale.
pub fn tripod_defect_experiment<M: ModelMetric>(
    model: &M,
    scale: f64,
    count: usize,
) -> DefectEstimate {
    let triple = model.equilateral_triple(scale);
    let candidates = model.candidates(scale, count);
    let mut best = f64::INFINITY;
    for m in &candidates {
        let mut worst = 0.0f64;
        for (i, j) in [(0, 1), (1, 2), (0, 2)] {
            let defect = model.dist(&triple[i], m) + model.dist(m, &triple[j])
                - model.dist(&triple[i], &triple[j]);
            worst = worst.max(defect);
        }
        best = best.min(worst);
    }
    DefectEstimate {
        scale,
        defect: best,
        candidates: candidates.len(),
        resolution: model.resolution(scale, count),
    }
}
