//! Camera model and line geometry primitives.

mod camera;
mod plucker;
mod wall;

pub use camera::CameraRig;
pub use plucker::{side, PluckerLine, ProjectingRay};
pub use wall::{line_from_wall_params, Wall, WallFrame};
