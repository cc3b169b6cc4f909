//! Non-central circular panorama camera.
//!
//! Optical centers lie on a horizontal circle of radius `R` around the
//! origin. Image column `col` owns the pencil of rays through
//! `C(phi) = R (cos phi, sin phi, 0)` with `phi = 2 pi col / width`; within a
//! column, image row `row` maps linearly to elevation
//! `theta = pi (0.5 - row / height)`. Every ray of a column lies in the
//! vertical plane spanned by the radial direction and the z-axis, so in plan
//! view rays are radial.

use nalgebra::Vector3;

use crate::error::GeometryError;
use crate::geometry::ProjectingRay;

use std::f64::consts::{FRAC_PI_2, PI, TAU};

/// Circular panorama rig: circle radius in meters plus the equirectangular
/// image dimensions in pixels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CameraRig {
    radius: f64,
    width: usize,
    height: usize,
}

impl CameraRig {
    pub fn new(radius: f64, width: usize, height: usize) -> Result<Self, GeometryError> {
        if !radius.is_finite() || radius <= 0.0 {
            return Err(GeometryError::InvalidRig { reason: format!("radius must be positive, got {radius}") });
        }
        if width < 4 || height < 2 {
            return Err(GeometryError::InvalidRig {
                reason: format!("image too small: {width}x{height}"),
            });
        }
        Ok(Self { radius, width, height })
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// Azimuth of a column center line.
    pub fn azimuth_of_col(&self, col: usize) -> f64 {
        TAU * col as f64 / self.width as f64
    }

    /// Optical center of the column at azimuth `phi`.
    pub fn center_at(&self, phi: f64) -> Vector3<f64> {
        Vector3::new(self.radius * phi.cos(), self.radius * phi.sin(), 0.0)
    }

    /// Elevation encoded by a (real-valued) image row.
    pub fn elevation_of_row(&self, row: f64) -> Result<f64, GeometryError> {
        if !row.is_finite() || row < 0.0 || row > self.height as f64 {
            return Err(GeometryError::RowOutOfRange { row });
        }
        let theta = PI * (0.5 - row / self.height as f64);
        if theta <= -FRAC_PI_2 || theta >= FRAC_PI_2 {
            return Err(GeometryError::RowOutOfRange { row });
        }
        Ok(theta)
    }

    /// Image row encoding an elevation; inverse of [`Self::elevation_of_row`].
    pub fn row_of_elevation(&self, theta: f64) -> f64 {
        self.height as f64 * (0.5 - theta / PI)
    }

    /// Ray of pixel (`col`, `row`); `row` may be fractional.
    pub fn back_project(&self, col: usize, row: f64) -> Result<ProjectingRay, GeometryError> {
        let theta = self.elevation_of_row(row)?;
        self.ray_from_elevation(col, theta)
    }

    /// Ray of column `col` at elevation `theta`, bypassing row quantization.
    pub fn ray_from_elevation(&self, col: usize, theta: f64) -> Result<ProjectingRay, GeometryError> {
        if col >= self.width {
            return Err(GeometryError::ColumnOutOfRange { col, width: self.width });
        }
        if !theta.is_finite() || theta <= -FRAC_PI_2 || theta >= FRAC_PI_2 {
            return Err(GeometryError::ElevationOutOfRange { theta });
        }
        let phi = self.azimuth_of_col(col);
        let (sin_phi, cos_phi) = phi.sin_cos();
        let (sin_theta, cos_theta) = theta.sin_cos();
        let direction = Vector3::new(cos_theta * cos_phi, cos_theta * sin_phi, sin_theta);
        Ok(ProjectingRay::new(self.center_at(phi), direction))
    }

    /// Elevation at which a column's pencil meets a point at horizontal
    /// range `distance` (measured from the column's optical center) and
    /// height `height` above the camera plane.
    pub fn project_elevation(&self, distance: f64, height: f64) -> f64 {
        height.atan2(distance)
    }
}
