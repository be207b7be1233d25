//! Poincaré disk model: points, distance, disk isometries, and geodesic
//! walls given by their ideal endpoints.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A point strictly inside the unit disk.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiskPoint {
    u: f64,
    v: f64,
}

impl DiskPoint {
    pub fn new(u: f64, v: f64) -> Result<Self> {
        // the negated comparison also rejects NaN coordinates
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(u * u + v * v < 1.0) {
            return Err(Error::domain(format!(
                "({u}, {v}) is not strictly inside the unit disk"
            )));
        }
        Ok(DiskPoint { u, v })
    }

    pub fn origin() -> Self {
        DiskPoint { u: 0.0, v: 0.0 }
    }

    /// The point at hyperbolic distance `r` from the origin along angle
    /// `angle`, using dist(0, z) = 2 artanh |z|.
    pub fn polar(r: f64, angle: f64) -> Result<Self> {
        if r < 0.0 {
            return Err(Error::domain("negative hyperbolic radius"));
        }
        let e = (r / 2.0).tanh();
        DiskPoint::new(e * angle.cos(), e * angle.sin())
    }

    pub fn coords(&self) -> (f64, f64) {
        (self.u, self.v)
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.u, self.v)
    }

    pub fn from_complex(z: Complex64) -> Result<Self> {
        DiskPoint::new(z.re, z.im)
    }
}

/// Poincaré distance arcosh(1 + 2|p−q|² / ((1−|p|²)(1−|q|²))).
pub fn hyperbolic_dist(p: DiskPoint, q: DiskPoint) -> f64 {
    let np = 1.0 - p.to_complex().norm_sqr();
    let nq = 1.0 - q.to_complex().norm_sqr();
    let diff = (p.to_complex() - q.to_complex()).norm_sqr();
    (1.0 + 2.0 * diff / (np * nq)).acosh()
}

/// The hyperbolic midpoint of p and q.
pub fn hyperbolic_midpoint(p: DiskPoint, q: DiskPoint) -> Result<DiskPoint> {
    let to_p = MobiusMap::centering(p);
    let q1 = to_p.apply_complex(q.to_complex());
    let d = hyperbolic_dist(p, q);
    if q1.norm() == 0.0 {
        return Ok(p);
    }
    let m1 = q1 / q1.norm() * (d / 4.0).tanh();
    DiskPoint::from_complex(to_p.inverse().apply_complex(m1))
}

/// A disk isometry z ↦ e^{iφ}(z − a)/(1 − ā z).
#[derive(Clone, Copy, Debug)]
pub struct MobiusMap {
    a: Complex64,
    phase: f64,
}

impl MobiusMap {
    pub fn new(a: Complex64, phase: f64) -> Result<Self> {
        // the negated comparison also rejects a NaN parameter
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(a.norm_sqr() < 1.0) {
            return Err(Error::domain("Möbius parameter outside the unit disk"));
        }
        Ok(MobiusMap { a, phase })
    }

    /// The isometry sending `p` to the origin with no rotation.
    pub fn centering(p: DiskPoint) -> Self {
        MobiusMap {
            a: p.to_complex(),
            phase: 0.0,
        }
    }

    pub fn apply_complex(&self, z: Complex64) -> Complex64 {
        let rot = Complex64::from_polar(1.0, self.phase);
        rot * (z - self.a) / (Complex64::new(1.0, 0.0) - self.a.conj() * z)
    }

    pub fn apply(&self, p: DiskPoint) -> Result<DiskPoint> {
        DiskPoint::from_complex(self.apply_complex(p.to_complex()))
    }

    /// Image of the boundary point e^{iθ}, returned as an angle.
    pub fn apply_boundary(&self, theta: f64) -> f64 {
        let w = self.apply_complex(Complex64::from_polar(1.0, theta));
        w.im.atan2(w.re)
    }

    pub fn inverse(&self) -> MobiusMap {
        let rot = Complex64::from_polar(1.0, self.phase);
        MobiusMap {
            a: -self.a * rot,
            phase: -self.phase,
        }
    }

    /// A seeded random isometry with |a| ≤ 0.8.
    pub fn random(rng: &mut impl rand::Rng) -> Self {
        let r = 0.8 * rng.gen::<f64>();
        let t = std::f64::consts::TAU * rng.gen::<f64>();
        let phase = std::f64::consts::TAU * rng.gen::<f64>();
        MobiusMap {
            a: Complex64::from_polar(r, t),
            phase,
        }
    }
}

/// A geodesic wall, named by the angles of its two ideal endpoints.
#[derive(Clone, Copy, Debug)]
pub struct GeodesicWall {
    pub theta1: f64,
    pub theta2: f64,
}

const DEGENERATE_EPS: f64 = 1e-12;

enum SideForm {
    /// Euclidean circle orthogonal to the boundary, named by its center.
    Circle(Complex64),
    /// Diameter through the given boundary direction.
    Diameter(Complex64),
}

impl GeodesicWall {
    pub fn new(theta1: f64, theta2: f64) -> Result<Self> {
        let w = GeodesicWall { theta1, theta2 };
        w.side_form()?;
        Ok(w)
    }

    /// Coefficients (c, diameter) of the signed side function. For a
    /// non-diameter geodesic, c is the center of the Euclidean circle
    /// orthogonal to the unit circle through both endpoints and the side
    /// value is |z|² − 2 Re(c̄ z) + 1; for a diameter through direction u
    /// the side value is Im(ū z).
    fn side_form(&self) -> Result<SideForm> {
        let u = Complex64::from_polar(1.0, self.theta1);
        let v = Complex64::from_polar(1.0, self.theta2);
        let det = u.re * v.im - u.im * v.re;
        if det.abs() > 1e-9 {
            // solve Re(c̄ u) = 1, Re(c̄ v) = 1
            let cx = (v.im - u.im) / det;
            let cy = (u.re - v.re) / det;
            Ok(SideForm::Circle(Complex64::new(cx, cy)))
        } else if (u + v).norm() < 1.0 {
            Ok(SideForm::Diameter(u))
        } else {
            Err(Error::domain(format!(
                "degenerate geodesic wall: endpoints {} and {} coincide",
                self.theta1, self.theta2
            )))
        }
    }

    /// Signed side value; zero means the point lies on the geodesic up to
    /// rounding.
    pub fn side_value(&self, p: DiskPoint) -> Result<f64> {
        let z = p.to_complex();
        Ok(match self.side_form()? {
            SideForm::Circle(c) => z.norm_sqr() - 2.0 * (c.conj() * z).re + 1.0,
            SideForm::Diameter(u) => (u.conj() * z).im,
        })
    }

    /// True when the side test for either point is too close to zero to
    /// trust; callers resolve this by resampling the wall.
    pub fn is_borderline(&self, p: DiskPoint, q: DiskPoint) -> Result<bool> {
        Ok(
            self.side_value(p)?.abs() < DEGENERATE_EPS
                || self.side_value(q)?.abs() < DEGENERATE_EPS,
        )
    }
}

/// True iff the geodesic separates p from q (strictly opposite sides).
pub fn geodesic_separates(w: &GeodesicWall, p: DiskPoint, q: DiskPoint) -> Result<bool> {
    Ok(w.side_value(p)? * w.side_value(q)? < 0.0)
}
