//! Wall and layout solvers.

mod directions;
mod joint;
mod minimal;
mod nullspace;
mod pipeline;
mod refine;
mod system;
mod wall;

pub use directions::{classify_directions, DirectionClasses, ManhattanClass};
pub use joint::{solve_atlanta, solve_manhattan, JointSolution};
pub use pipeline::{reconstruct_layout, LayoutSolution, SolveDiagnostics, SolveOptions};
pub use refine::{refine_layout, RefinedLayout};
pub use minimal::{solve_wall_minimal, MAX_MINIMAL_CANDIDATES};
pub use nullspace::SpectralDecomposition;
pub use system::{build_wall_system, WallRays, WALL_VECTOR_DIM};
pub use wall::{max_side_residual, solve_wall, RootCandidate, WallEstimate};
