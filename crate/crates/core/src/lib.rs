//! Metrically scaled 3-D room layout recovery from non-central circular
//! panoramas.
//!
//! The camera is a circle of optical centers: each panorama column is a
//! pencil of rays leaving a point on the circle radially. The offset between
//! columns makes absolute scale observable, unlike a central panorama. This
//! crate provides:
//!
//! - [`geometry`]: the camera model, Plücker lines and the side product;
//! - [`scene`]: random room generation, exact boundary rendering, a noise
//!   model and corner segmentation;
//! - [`solvers`]: linear wall solvers (over-determined and minimal) plus
//!   joint Manhattan/Atlanta solvers and the end-to-end layout pipeline;
//! - [`metrics`]: volumetric IoU and corner-error metrics for evaluation.

pub mod error;
pub mod geom2d;
pub mod geometry;
pub mod io;
pub mod metrics;
pub mod scene;
pub mod solvers;

pub use error::{GeometryError, MetricsError, SceneError, SolveError};
pub use geometry::{side, CameraRig, PluckerLine, ProjectingRay, Wall, WallFrame};
pub use metrics::{evaluate, EvaluationReport};
pub use scene::{BoundaryObservation, DatasetSpec, Layout, NoiseParams, WorldMode};
pub use solvers::{reconstruct_layout, LayoutSolution, SolveOptions};
