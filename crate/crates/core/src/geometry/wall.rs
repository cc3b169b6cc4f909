//! Vertical walls and their attached orthonormal frames.
//!
//! A wall frame has `e1` horizontal along the wall, `e3 = z`, and
//! `e2 = e3 x e1` pointing from the camera axis toward the wall plane. A wall
//! is then three scalars in that frame: plane offset `d > 0` and the signed
//! ceiling/floor boundary heights `h_c > 0 > h_f` relative to the camera
//! plane. The ceiling boundary line is `(e1, h e2 - d e3)` in Plücker
//! coordinates, which keeps every wall quantity linear in the solvers.

use nalgebra::{Matrix3, Vector2, Vector3};

use crate::error::GeometryError;
use crate::geometry::{PluckerLine, ProjectingRay};

/// Right-handed orthonormal frame of a vertical wall.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WallFrame {
    e1: Vector3<f64>,
    e2: Vector3<f64>,
}

impl WallFrame {
    /// Frame with `e1` along the given horizontal direction (normalized).
    pub fn from_direction(dir: Vector2<f64>) -> Result<Self, GeometryError> {
        let norm = dir.norm();
        if !norm.is_finite() || norm < 1e-12 {
            return Err(GeometryError::DegenerateDirection { norm });
        }
        let e1 = Vector3::new(dir.x / norm, dir.y / norm, 0.0);
        let e2 = Vector3::z().cross(&e1);
        Ok(Self { e1, e2 })
    }

    /// Frame of a wall parallel to the x-axis (e2 = +y).
    pub fn axis_aligned() -> Self {
        Self { e1: Vector3::x(), e2: Vector3::y() }
    }

    pub fn e1(&self) -> Vector3<f64> {
        self.e1
    }

    pub fn e2(&self) -> Vector3<f64> {
        self.e2
    }

    pub fn e3(&self) -> Vector3<f64> {
        Vector3::z()
    }

    /// Horizontal wall direction as a 2-vector.
    pub fn direction2(&self) -> Vector2<f64> {
        Vector2::new(self.e1.x, self.e1.y)
    }

    /// Horizontal wall normal (toward the wall) as a 2-vector.
    pub fn normal2(&self) -> Vector2<f64> {
        Vector2::new(self.e2.x, self.e2.y)
    }

    /// Frame with `e1` flipped (same wall plane, opposite `d` sign).
    pub fn flipped(&self) -> Self {
        Self { e1: -self.e1, e2: -self.e2 }
    }

    /// World-to-frame rotation (rows are the basis vectors).
    pub fn world_to_local(&self) -> Matrix3<f64> {
        Matrix3::from_rows(&[self.e1.transpose(), self.e2.transpose(), Vector3::z().transpose()])
    }

    /// Expresses a ray in this frame's coordinates. Both the direction and
    /// the moment rotate like vectors under a pure rotation.
    pub fn ray_to_local(&self, ray: &ProjectingRay) -> ProjectingRay {
        let rot = self.world_to_local();
        ProjectingRay::new(rot * ray.origin, rot * ray.direction)
    }
}

/// Horizontal boundary line of a wall: direction `e1` through the point
/// `d e2 + h e3`.
pub fn line_from_wall_params(frame: &WallFrame, h: f64, d: f64) -> PluckerLine {
    PluckerLine::through_point(d * frame.e2() + h * frame.e3(), frame.e1())
}

/// A finished wall estimate: frame plus the three scalars.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Wall {
    pub frame: WallFrame,
    /// Distance from the camera axis to the wall plane, meters.
    pub d: f64,
    /// Ceiling boundary height above the camera plane, meters.
    pub h_c: f64,
    /// Floor boundary height (negative), meters.
    pub h_f: f64,
}

impl Wall {
    pub fn ceiling_line(&self) -> PluckerLine {
        line_from_wall_params(&self.frame, self.h_c, self.d)
    }

    pub fn floor_line(&self) -> PluckerLine {
        line_from_wall_params(&self.frame, self.h_f, self.d)
    }
}
