//! Room layouts: a simple floor polygon extruded between two heights.

use nalgebra::Vector2;

use crate::error::SceneError;
use crate::geom2d::{self, Vec2};

/// A 3-D room layout. The floor polygon is counter-clockwise in plan view;
/// walls are the vertical faces over its edges; `h_c` and `h_f` are the
/// ceiling and floor heights relative to the camera plane (z = 0).
#[derive(Debug, Clone, PartialEq)]
pub struct Layout {
    vertices: Vec<Vec2>,
    h_c: f64,
    h_f: f64,
}

impl Layout {
    /// Validates and normalizes a layout: at least 3 vertices, simple
    /// polygon, `h_c > 0 > h_f`. Clockwise input is reversed to
    /// counter-clockwise.
    pub fn new(mut vertices: Vec<Vec2>, h_c: f64, h_f: f64) -> Result<Self, SceneError> {
        if vertices.len() < 3 {
            return Err(SceneError::InvalidLayout {
                reason: format!("{} vertices; need at least 3", vertices.len()),
            });
        }
        if !(h_c.is_finite() && h_f.is_finite() && h_c > 0.0 && h_f < 0.0) {
            return Err(SceneError::InvalidLayout {
                reason: format!("heights must satisfy h_c > 0 > h_f, got h_c={h_c}, h_f={h_f}"),
            });
        }
        if vertices.iter().any(|v| !(v.x.is_finite() && v.y.is_finite())) {
            return Err(SceneError::InvalidLayout { reason: "non-finite vertex".into() });
        }
        if !geom2d::is_simple(&vertices) {
            return Err(SceneError::InvalidLayout { reason: "polygon is self-intersecting".into() });
        }
        if !geom2d::is_ccw(&vertices) {
            vertices.reverse();
        }
        Ok(Self { vertices, h_c, h_f })
    }

    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }

    pub fn wall_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn h_c(&self) -> f64 {
        self.h_c
    }

    pub fn h_f(&self) -> f64 {
        self.h_f
    }

    /// Endpoints of wall `i` (the edge from vertex i to vertex i+1).
    pub fn wall_segment(&self, i: usize) -> (Vec2, Vec2) {
        let n = self.vertices.len();
        (self.vertices[i % n], self.vertices[(i + 1) % n])
    }

    /// Floor area in square meters.
    pub fn floor_area(&self) -> f64 {
        geom2d::signed_area(&self.vertices)
    }

    /// Uniformly scales the room (footprint and heights) about the camera
    /// origin.
    pub fn scaled(&self, s: f64) -> Layout {
        Layout {
            vertices: self.vertices.iter().map(|v| s * v).collect(),
            h_c: s * self.h_c,
            h_f: s * self.h_f,
        }
    }

    /// Checks that the camera circle of the given radius fits inside the
    /// polygon with positive clearance to every wall.
    pub fn validate_camera_clearance(&self, radius: f64) -> Result<(), SceneError> {
        if !geom2d::contains_point(&self.vertices, Vector2::zeros()) {
            return Err(SceneError::CameraOutside);
        }
        let (dist, wall) = geom2d::dist_to_boundary(&self.vertices, Vector2::zeros());
        if dist <= radius {
            return Err(SceneError::CameraClearance { wall, distance: dist, radius });
        }
        Ok(())
    }

    /// True if any interior angle is reflex (non-convex footprint).
    pub fn is_nonconvex(&self) -> bool {
        let n = self.vertices.len();
        (0..n).any(|i| {
            let a = self.vertices[(i + n - 1) % n];
            let b = self.vertices[i];
            let c = self.vertices[(i + 1) % n];
            geom2d::cross2(b - a, c - b) < 0.0
        })
    }
}
