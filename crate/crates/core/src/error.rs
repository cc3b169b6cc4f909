//! Error types shared across the library.

use thiserror::Error;

/// Errors from camera models and line geometry.
#[derive(Debug, Clone, Error)]
pub enum GeometryError {
    #[error("invalid camera rig: {reason}")]
    InvalidRig { reason: String },
    #[error("column {col} outside image width {width}")]
    ColumnOutOfRange { col: usize, width: usize },
    #[error("row {row} maps to an elevation outside (-pi/2, pi/2)")]
    RowOutOfRange { row: f64 },
    #[error("elevation {theta} outside (-pi/2, pi/2)")]
    ElevationOutOfRange { theta: f64 },
    #[error("direction vector too small to normalize (norm {norm:.3e})")]
    DegenerateDirection { norm: f64 },
    #[error("Plucker constraint violated: direction . moment = {residual:.3e}")]
    NotALine { residual: f64 },
}

/// Errors from layouts, rendering, noise and segmentation.
#[derive(Debug, Clone, Error)]
pub enum SceneError {
    #[error("invalid layout: {reason}")]
    InvalidLayout { reason: String },
    #[error("camera circle of radius {radius} m violates clearance at wall {wall}: distance {distance:.3} m")]
    CameraClearance { wall: usize, distance: f64, radius: f64 },
    #[error("camera origin is not strictly inside the layout polygon")]
    CameraOutside,
    #[error("no wall visible along azimuth {azimuth:.6} rad")]
    NoVisibleWall { azimuth: f64 },
    #[error("boundary observation malformed: {reason}")]
    InvalidObservation { reason: String },
    #[error("layout generation failed after {attempts} attempts (seed {seed}, index {index})")]
    GenerationFailed { attempts: usize, seed: u64, index: u64 },
    #[error("segmentation found {found} corners; at least 3 are needed for a closed layout")]
    TooFewCorners { found: usize },
    #[error("noise sigma must be finite and >= 0, got {sigma}")]
    InvalidSigma { sigma: f64 },
}

/// Errors from the wall and layout solvers.
#[derive(Debug, Clone, Error)]
pub enum SolveError {
    #[error("need at least {needed} rays per boundary line, got {got}")]
    InsufficientRays { needed: usize, got: usize },
    #[error("degenerate ray configuration: {reason}")]
    DegenerateConfiguration { reason: String },
    #[error("parallelism constraints have no real root")]
    NoRealRoot,
    #[error("no candidate places the ceiling above the floor")]
    NoFeasibleRoot,
    #[error("infeasible layout: {reason}")]
    InfeasibleLayout { reason: String },
    #[error("wall count mismatch: {walls} walls but {other} {what}")]
    WallCountMismatch { walls: usize, other: usize, what: &'static str },
    #[error(transparent)]
    Scene(#[from] SceneError),
}

/// Errors from evaluation metrics.
#[derive(Debug, Clone, Error)]
pub enum MetricsError {
    #[error("corner count mismatch: prediction has {pred}, ground truth has {gt}")]
    CornerCountMismatch { pred: usize, gt: usize },
    #[error("degenerate polygon: {reason}")]
    DegeneratePolygon { reason: String },
    #[error("union volume is zero; IoU undefined")]
    ZeroVolume,
}
