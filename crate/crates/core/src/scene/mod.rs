//! Synthetic scenes: room layouts, boundary rendering, noise and
//! segmentation.

mod generate;
mod layout;
mod noise;
mod render;
mod segment;

pub use generate::{generate_layout, DatasetSpec, WorldMode};
pub use layout::Layout;
pub use noise::{add_noise, NoiseParams};
pub use render::{render_boundaries, visible_wall, visible_wall_labels, BoundaryObservation};
pub use segment::{segment_columns, ColumnRange, SegmentParams};
