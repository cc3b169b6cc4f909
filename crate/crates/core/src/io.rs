//! Serializable file schemas for layouts and observations.
//!
//! The on-disk types are plain data with no invariants; converting them into
//! the validated domain types ([`Layout`], [`BoundaryObservation`]) checks
//! the invariants and is the only way back in.

use serde::{Deserialize, Serialize};

use crate::error::SceneError;
use crate::geom2d::Vec2;
use crate::geometry::CameraRig;
use crate::scene::{BoundaryObservation, Layout};

/// A room layout as stored on disk: plan-view vertices in meters plus the
/// ceiling and floor heights relative to the camera plane.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayoutFile {
    pub vertices: Vec<[f64; 2]>,
    pub h_c: f64,
    pub h_f: f64,
}

impl From<&Layout> for LayoutFile {
    fn from(layout: &Layout) -> Self {
        Self {
            vertices: layout.vertices().iter().map(|v| [v.x, v.y]).collect(),
            h_c: layout.h_c(),
            h_f: layout.h_f(),
        }
    }
}

impl TryFrom<LayoutFile> for Layout {
    type Error = SceneError;

    fn try_from(file: LayoutFile) -> Result<Self, Self::Error> {
        Layout::new(
            file.vertices.iter().map(|&[x, y]| Vec2::new(x, y)).collect(),
            file.h_c,
            file.h_f,
        )
    }
}

/// Camera rig parameters as stored on disk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CameraFile {
    /// Radius of the circle of optical centers, meters.
    pub radius: f64,
    /// Panorama width in pixels (one column per azimuth sample).
    pub width: usize,
    /// Panorama height in pixels.
    pub height: usize,
}

impl From<&CameraRig> for CameraFile {
    fn from(rig: &CameraRig) -> Self {
        Self { radius: rig.radius(), width: rig.width(), height: rig.height() }
    }
}

impl TryFrom<CameraFile> for CameraRig {
    type Error = SceneError;

    fn try_from(file: CameraFile) -> Result<Self, Self::Error> {
        CameraRig::new(file.radius, file.width, file.height)
            .map_err(|e| SceneError::InvalidObservation { reason: e.to_string() })
    }
}

/// A per-column boundary observation as stored on disk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObservationFile {
    pub camera: CameraFile,
    /// Wall–ceiling boundary elevation per column, radians.
    pub theta_ceiling: Vec<f64>,
    /// Wall–floor boundary elevation per column, radians.
    pub theta_floor: Vec<f64>,
    /// Corner likelihood per column, in `[0, 1]`.
    pub corner_prob: Vec<f64>,
}

impl From<&BoundaryObservation> for ObservationFile {
    fn from(obs: &BoundaryObservation) -> Self {
        Self {
            camera: CameraFile::from(&obs.rig),
            theta_ceiling: obs.theta_ceiling.clone(),
            theta_floor: obs.theta_floor.clone(),
            corner_prob: obs.corner_prob.clone(),
        }
    }
}

impl TryFrom<ObservationFile> for BoundaryObservation {
    type Error = SceneError;

    fn try_from(file: ObservationFile) -> Result<Self, Self::Error> {
        let rig = CameraRig::try_from(file.camera)?;
        BoundaryObservation::new(rig, file.theta_ceiling, file.theta_floor, file.corner_prob)
    }
}
