//! Plücker line coordinates and the side (reciprocal) product.
//!
//! A line is stored as a direction `l` and a moment `l_bar = p x l` for any
//! point `p` on the line. Two lines `(a, a_bar)` and `(b, b_bar)` intersect
//! (or are parallel) exactly when the side product
//! `a . b_bar + a_bar . b` vanishes; the product is bilinear in both
//! six-vectors, which is what makes the wall solvers linear.

use nalgebra::Vector3;

use crate::error::GeometryError;

/// Relative tolerance for the Plücker consistency check in [`PluckerLine::new`].
const PLUCKER_TOL: f64 = 1e-9;

/// An infinite 3-D line in Plücker coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PluckerLine {
    direction: Vector3<f64>,
    moment: Vector3<f64>,
}

impl PluckerLine {
    /// Builds a line from raw coordinates, rejecting zero directions and
    /// pairs that violate `direction . moment = 0`.
    pub fn new(direction: Vector3<f64>, moment: Vector3<f64>) -> Result<Self, GeometryError> {
        let norm = direction.norm();
        if !norm.is_finite() || norm < 1e-12 {
            return Err(GeometryError::DegenerateDirection { norm });
        }
        let residual = direction.dot(&moment);
        let scale = norm * (1.0 + moment.norm());
        if residual.abs() > PLUCKER_TOL * scale {
            return Err(GeometryError::NotALine { residual });
        }
        Ok(Self { direction, moment })
    }

    /// Line through `point` with the given direction; the moment is `point x direction`.
    pub fn through_point(point: Vector3<f64>, direction: Vector3<f64>) -> Self {
        Self { direction, moment: point.cross(&direction) }
    }

    pub fn direction(&self) -> Vector3<f64> {
        self.direction
    }

    pub fn moment(&self) -> Vector3<f64> {
        self.moment
    }
}

/// A viewing ray: a Plücker line with a distinguished origin (the optical
/// center of the image column it came from).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectingRay {
    pub origin: Vector3<f64>,
    pub direction: Vector3<f64>,
}

impl ProjectingRay {
    pub fn new(origin: Vector3<f64>, direction: Vector3<f64>) -> Self {
        Self { origin, direction }
    }

    /// Moment of the ray's supporting line: `origin x direction`.
    pub fn moment(&self) -> Vector3<f64> {
        self.origin.cross(&self.direction)
    }

    /// Point at parameter `t` along the ray.
    pub fn at(&self, t: f64) -> Vector3<f64> {
        self.origin + t * self.direction
    }

    /// The supporting line of the ray.
    pub fn line(&self) -> PluckerLine {
        PluckerLine::through_point(self.origin, self.direction)
    }
}

/// Side product of a ray and a line: zero iff the two are coplanar
/// (intersecting or parallel). Bilinear in both arguments.
pub fn side(ray: &ProjectingRay, line: &PluckerLine) -> f64 {
    ray.direction.dot(&line.moment()) + ray.moment().dot(&line.direction())
}
