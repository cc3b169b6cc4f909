//! Boundary rendering: per-column visibility and elevation observations.
//!
//! In plan view every camera ray is radial (the column at azimuth `phi`
//! looks outward along `(cos phi, sin phi)` from its optical center on the
//! circle), so the wall visible in a column is the wall a point observer at
//! the origin would see along that azimuth.

use nalgebra::Vector2;

use crate::error::SceneError;
use crate::geom2d::{self, Vec2};
use crate::geometry::CameraRig;
use crate::scene::Layout;

/// Per-column boundary observation of a layout through a [`CameraRig`]:
/// elevations of the wall-ceiling and wall-floor boundaries plus a corner
/// likelihood per column.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryObservation {
    pub rig: CameraRig,
    pub theta_ceiling: Vec<f64>,
    pub theta_floor: Vec<f64>,
    pub corner_prob: Vec<f64>,
}

impl BoundaryObservation {
    /// Validates lengths against the rig and the sign convention
    /// `theta_ceiling > 0 > theta_floor` per column.
    pub fn new(
        rig: CameraRig,
        theta_ceiling: Vec<f64>,
        theta_floor: Vec<f64>,
        corner_prob: Vec<f64>,
    ) -> Result<Self, SceneError> {
        let w = rig.width();
        for (name, v) in [
            ("theta_ceiling", &theta_ceiling),
            ("theta_floor", &theta_floor),
            ("corner_prob", &corner_prob),
        ] {
            if v.len() != w {
                return Err(SceneError::InvalidObservation {
                    reason: format!("{name} has {} entries, image width is {w}", v.len()),
                });
            }
            if v.iter().any(|x| !x.is_finite()) {
                return Err(SceneError::InvalidObservation { reason: format!("{name} has non-finite entries") });
            }
        }
        if let Some(col) = (0..w).find(|&i| theta_ceiling[i] <= 0.0 || theta_floor[i] >= 0.0) {
            return Err(SceneError::InvalidObservation {
                reason: format!(
                    "column {col}: need theta_ceiling > 0 > theta_floor, got {} and {}",
                    theta_ceiling[col], theta_floor[col]
                ),
            });
        }
        Ok(Self { rig, theta_ceiling, theta_floor, corner_prob })
    }

    pub fn width(&self) -> usize {
        self.rig.width()
    }
}

/// Nearest wall hit by the radial ray at `azimuth` from the given plan-view
/// origin: `(wall index, range)`. The range is measured from `origin2d`.
pub fn visible_wall(layout: &Layout, origin2d: Vec2, azimuth: f64) -> Result<(usize, f64), SceneError> {
    let dir = Vector2::new(azimuth.cos(), azimuth.sin());
    geom2d::cast_ray(layout.vertices(), origin2d, dir)
        .ok_or(SceneError::NoVisibleWall { azimuth })
}

/// Renders the exact boundary observation of a layout. Corner likelihood is
/// 1.0 at columns where the visible wall differs from the previous column
/// (cyclically), else 0.0.
pub fn render_boundaries(layout: &Layout, rig: &CameraRig) -> Result<BoundaryObservation, SceneError> {
    layout.validate_camera_clearance(rig.radius())?;
    let w = rig.width();
    let mut theta_ceiling = Vec::with_capacity(w);
    let mut theta_floor = Vec::with_capacity(w);
    let mut walls = Vec::with_capacity(w);
    for col in 0..w {
        let phi = rig.azimuth_of_col(col);
        let center = rig.center_at(phi);
        let (wall, t) = visible_wall(layout, Vector2::new(center.x, center.y), phi)?;
        theta_ceiling.push(rig.project_elevation(t, layout.h_c()));
        theta_floor.push(rig.project_elevation(t, layout.h_f()));
        walls.push(wall);
    }
    let corner_prob = (0..w)
        .map(|col| if walls[col] != walls[(col + w - 1) % w] { 1.0 } else { 0.0 })
        .collect();
    BoundaryObservation::new(*rig, theta_ceiling, theta_floor, corner_prob)
}

/// Ground-truth visible wall index per column (test and diagnostics helper).
pub fn visible_wall_labels(layout: &Layout, rig: &CameraRig) -> Result<Vec<usize>, SceneError> {
    (0..rig.width())
        .map(|col| {
            let phi = rig.azimuth_of_col(col);
            let center = rig.center_at(phi);
            visible_wall(layout, Vector2::new(center.x, center.y), phi).map(|(wall, _)| wall)
        })
        .collect()
}
