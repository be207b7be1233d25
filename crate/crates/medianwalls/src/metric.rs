//! Metric-side computations on finite pseudo-metric spaces: betweenness,
//! intervals, median sets, tripodal constants and projections.
//!
//! Everything is generic over a scalar so the same code runs exactly on
//! rational inputs and with an absolute tolerance on floating inputs.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::wallspace::{PointId, WallSpace};
use crate::Weight;

/// Scalar abstraction: exact rationals compare exactly, floats compare with
/// an absolute tolerance of 1e-9.
pub trait Scalar:
    Clone + PartialOrd + std::ops::Add<Output = Self> + std::ops::Sub<Output = Self> + std::fmt::Debug
{
    fn zero() -> Self;
    fn tol() -> Self;
    fn abs(&self) -> Self;
    fn is_zero_val(&self) -> bool {
        self.abs() <= Self::tol()
    }
    /// a <= b up to tolerance
    fn le_tol(&self, other: &Self) -> bool {
        *self <= other.clone() + Self::tol()
    }
}

impl Scalar for Weight {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn tol() -> Self {
        num_traits::Zero::zero()
    }
    fn abs(&self) -> Self {
        if *self < <Self as Scalar>::zero() {
            -*self
        } else {
            *self
        }
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn tol() -> Self {
        1e-9
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
}

/// A finite pseudo-metric space given by its full distance matrix.
#[derive(Clone, Debug)]
pub struct FiniteMetricSpace<T> {
    labels: Vec<String>,
    dist: Vec<Vec<T>>,
}

impl<T: Scalar> FiniteMetricSpace<T> {
    /// Validates symmetry, zero diagonal and the triangle inequality.
    /// Zero distance between distinct points is legal (pseudo-metric).
    pub fn new(labels: Vec<String>, dist: Vec<Vec<T>>) -> Result<Self> {
        let n = labels.len();
        if dist.len() != n || dist.iter().any(|row| row.len() != n) {
            return Err(Error::input("distance matrix shape mismatch"));
        }
        for i in 0..n {
            if !dist[i][i].is_zero_val() {
                return Err(Error::input(format!("nonzero diagonal at {i}")));
            }
            for j in 0..n {
                if dist[i][j] < T::zero() {
                    return Err(Error::input(format!("negative distance at ({i},{j})")));
                }
                if !(dist[i][j].clone() - dist[j][i].clone()).is_zero_val() {
                    return Err(Error::input(format!("asymmetric at ({i},{j})")));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let slack = dist[i][k].clone() + dist[k][j].clone() - dist[i][j].clone();
                    if slack < T::zero() - T::tol() - T::tol() {
                        return Err(Error::input(format!(
                            "triangle inequality fails on ({i},{j},{k})"
                        )));
                    }
                }
            }
        }
        Ok(FiniteMetricSpace { labels, dist })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn points(&self) -> impl Iterator<Item = PointId> {
        (0..self.labels.len()).map(PointId)
    }

    pub fn dist(&self, x: PointId, y: PointId) -> T {
        self.dist[x.0][y.0].clone()
    }

    /// dist(x,m) + dist(m,y) - dist(x,y); nonnegative by the triangle
    /// inequality. `m` is delta-between `x,y` iff this is <= delta.
    pub fn betweenness_defect(&self, x: PointId, m: PointId, y: PointId) -> T {
        self.dist(x, m) + self.dist(m, y) - self.dist(x, y)
    }

    /// All points with zero betweenness defect between `a` and `b`.
    pub fn interval(&self, a: PointId, b: PointId) -> Vec<PointId> {
        self.points()
            .filter(|&m| self.betweenness_defect(a, m, b).is_zero_val())
            .collect()
    }

    /// Triple intersection of the three intervals; possibly empty.
    pub fn median_set(&self, a: PointId, b: PointId, c: PointId) -> Vec<PointId> {
        self.points()
            .filter(|&m| {
                self.betweenness_defect(a, m, b).is_zero_val()
                    && self.betweenness_defect(b, m, c).is_zero_val()
                    && self.betweenness_defect(a, m, c).is_zero_val()
            })
            .collect()
    }

    pub fn diameter_of(&self, set: &[PointId]) -> T {
        let mut d = T::zero();
        for (k, &a) in set.iter().enumerate() {
            for &b in &set[k + 1..] {
                let v = self.dist(a, b);
                if v > d {
                    d = v;
                }
            }
        }
        d
    }

    /// Pass iff every triple has a nonempty median set of diameter zero.
    pub fn is_median_space(&self) -> MedianVerdict {
        let n = self.len();
        for a in 0..n {
            for b in a..n {
                for c in b..n {
                    let med = self.median_set(PointId(a), PointId(b), PointId(c));
                    if med.is_empty() || !self.diameter_of(&med).is_zero_val() {
                        return MedianVerdict::Fail {
                            witness: (PointId(a), PointId(b), PointId(c)),
                        };
                    }
                }
            }
        }
        MedianVerdict::Pass
    }

    /// For a fixed triple: min over the candidate points of the max pairwise
    /// betweenness defect.
    pub fn tripod_defect(
        &self,
        triple: (PointId, PointId, PointId),
        candidates: impl IntoIterator<Item = PointId>,
    ) -> Option<(T, PointId)> {
        let (x, y, z) = triple;
        let mut best: Option<(T, PointId)> = None;
        for m in candidates {
            let d1 = self.betweenness_defect(x, m, y);
            let d2 = self.betweenness_defect(y, m, z);
            let d3 = self.betweenness_defect(x, m, z);
            let mut worst = d1;
            if d2 > worst {
                worst = d2;
            }
            if d3 > worst {
                worst = d3;
            }
            match &best {
                Some((b, _)) if *b <= worst => {}
                _ => best = Some((worst, m)),
            }
        }
        best
    }

    /// Least delta for which the space is delta-tripodal, with candidate
    /// near-median points restricted to the points of the space.
    pub fn tripodal_constant(&self) -> TripodReport<T> {
        let n = self.len();
        let mut delta = T::zero();
        let mut witness = (PointId(0), PointId(0), PointId(0));
        for a in 0..n {
            for b in a..n {
                for c in b..n {
                    let triple = (PointId(a), PointId(b), PointId(c));
                    let (d, _) = self
                        .tripod_defect(triple, self.points())
                        .expect("nonempty space");
                    if d > delta {
                        delta = d;
                        witness = triple;
                    }
                }
            }
        }
        let spread = self
            .delta_median_diameter(delta.clone())
            .expect("space is delta-tripodal at its own constant");
        TripodReport {
            delta: delta.clone(),
            witness_triple: witness,
            median_spread: vec![(delta, spread)],
        }
    }

    /// Max over triples of the diameter of the set of points that are
    /// delta-between all three pairs. Errors when some triple admits no such
    /// point at all (the space is not delta-tripodal).
    pub fn delta_median_diameter(&self, delta: T) -> Result<T> {
        let n = self.len();
        let mut worst = T::zero();
        for a in 0..n {
            for b in a..n {
                for c in b..n {
                    let (x, y, z) = (PointId(a), PointId(b), PointId(c));
                    let qualifying: Vec<PointId> = self
                        .points()
                        .filter(|&m| {
                            self.betweenness_defect(x, m, y).le_tol(&delta)
                                && self.betweenness_defect(y, m, z).le_tol(&delta)
                                && self.betweenness_defect(x, m, z).le_tol(&delta)
                        })
                        .collect();
                    if qualifying.is_empty() {
                        return Err(Error::domain(format!(
                            "not {delta:?}-tripodal: witness triple ({a},{b},{c})"
                        )));
                    }
                    let diam = self.diameter_of(&qualifying);
                    if diam > worst {
                        worst = diam;
                    }
                }
            }
        }
        Ok(worst)
    }

    /// All p in `set` with dist(x,p) < dist(x,set) + eps (strict, matching
    /// the epsilon-projection definition).
    pub fn epsilon_projection(&self, x: PointId, set: &[PointId], eps: T) -> Result<Vec<PointId>> {
        if set.is_empty() {
            return Err(Error::domain("epsilon_projection on an empty set"));
        }
        let min = set
            .iter()
            .map(|&p| self.dist(x, p))
            .fold(None::<T>, |acc, d| match acc {
                Some(a) if a <= d => Some(a),
                _ => Some(d),
            })
            .unwrap();
        Ok(set
            .iter()
            .copied()
            .filter(|&p| self.dist(x, p) < min.clone() + eps.clone())
            .collect())
    }
}

impl FiniteMetricSpace<Weight> {
    /// The wall pseudo-metric of a wall space as a metric-space value.
    pub fn from_wallspace(x: &WallSpace) -> Self {
        let n = x.point_count();
        let dist = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| x.wall_pdist(PointId(i), PointId(j)).unwrap())
                    .collect()
            })
            .collect();
        FiniteMetricSpace {
            labels: x.labels().to_vec(),
            dist,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MedianVerdict {
    Pass,
    Fail {
        witness: (PointId, PointId, PointId),
    },
}

impl MedianVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, MedianVerdict::Pass)
    }
}

/// Measured tripodal constant with its witness triple and, per probed delta,
/// the worst diameter of the delta-median point sets.
#[derive(Clone, Debug, Serialize)]
pub struct TripodReport<T> {
    pub delta: T,
    pub witness_triple: (PointId, PointId, PointId),
    pub median_spread: Vec<(T, T)>,
}
