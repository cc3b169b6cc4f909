//! End-to-end layout recovery from a single boundary observation.
//!
//! Stages: split the panorama into per-wall column ranges at the corner
//! spikes, back-project each range's boundary elevations into projecting
//! rays, estimate every wall on its own to read off its horizontal
//! direction, re-solve all walls jointly under the shared ceiling and floor
//! heights of the chosen world regime, polish the result against the raw
//! boundary angles, and intersect consecutive wall planes into the corner
//! polygon.

use nalgebra::Vector2;

use crate::error::SolveError;
use crate::geom2d::cross2;
use crate::geometry::Wall;
use crate::scene::{segment_columns, BoundaryObservation, Layout, SegmentParams, WorldMode};

use super::directions::classify_directions;
use super::joint::{solve_atlanta, solve_manhattan, JointSolution};
use super::refine::refine_layout;
use super::system::WallRays;
use super::wall::{max_side_residual, solve_wall, WallEstimate};

/// Two consecutive walls whose plan-view normals subtend less than this are
/// treated as parallel and refused a corner.
const CORNER_PARALLEL_TOL: f64 = 1e-9;

/// A single-wall estimate whose direction strays further than this from the
/// robust line-fit direction is distrusted: short, noisy wall segments can
/// lock onto a spurious near-null direction of the wall system (a "wall"
/// hugging the camera circle), which shows up as a direction roughly a
/// quarter turn off.
const DIRECTION_AGREEMENT: f64 = 25.0 * std::f64::consts::PI / 180.0;

/// Boundary points with elevation below this are dropped from the line-fit
/// fallback; their plan-view range `cot(theta)` explodes and a single such
/// column would dominate the fit.
const MIN_FALLBACK_ELEVATION_TAN: f64 = 0.02;

/// Knobs of [`reconstruct_layout`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    /// Direction regime the joint solve assumes.
    pub mode: WorldMode,
    /// Corner detection parameters.
    pub segment: SegmentParams,
    /// Upper bound on boundary rays taken per wall and boundary; a wall's
    /// columns are subsampled evenly once it spans more than this.
    pub rays_per_boundary: usize,
    /// Columns dropped at each end of a wall's range before sampling, where
    /// boundary elevations mix neighbouring walls.
    pub segment_margin: usize,
    /// Angular slack (radians) for flagging unreliable direction classes.
    pub ambiguity_margin: f64,
}

impl SolveOptions {
    pub fn new(mode: WorldMode) -> Self {
        Self {
            mode,
            segment: SegmentParams::default(),
            rays_per_boundary: 512,
            segment_margin: 2,
            ambiguity_margin: 5.0_f64.to_radians(),
        }
    }
}

/// Health indicators of a finished reconstruction.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveDiagnostics {
    /// Largest `|side|` residual of any sampled ray against its recovered
    /// wall's boundary lines.
    pub max_side_residual: f64,
    /// Largest gap between the paired ceiling/floor roots over the
    /// single-wall estimates; large values mean inconsistent boundaries.
    pub max_lambda_mismatch: f64,
    /// Number of walls whose direction class was within the ambiguity
    /// margin of the class boundary (always 0 outside the right-angled
    /// regime).
    pub ambiguous_walls: usize,
    /// Dominant direction angle shared by the walls, when the right-angled
    /// regime was assumed.
    pub main_direction: Option<f64>,
    /// Pencil parameter of each single-wall estimate, in sweep order;
    /// absent where the single-wall solve failed.
    pub wall_lambda: Vec<Option<f64>>,
    /// Smallest relative singular value of each single-wall system; near
    /// zero on clean data; absent where the single-wall solve failed.
    pub wall_rel_kernel_sigma: Vec<Option<f64>>,
    /// Rank-guard relative singular value of the joint system.
    pub joint_rel_guard_sigma: f64,
    /// Number of walls whose direction came from the robust line fit
    /// because the single-wall estimate failed or disagreed with it.
    pub fallback_directions: usize,
    /// Root-mean-square angular residual (radians) after the nonlinear
    /// polish, or `None` when the polish was rejected and the linear
    /// estimate kept.
    pub refine_rms: Option<f64>,
}

/// A recovered layout with its supporting walls and diagnostics.
#[derive(Debug, Clone)]
pub struct LayoutSolution {
    pub layout: Layout,
    /// One wall per detected segment, in sweep order, sharing the layout's
    /// heights.
    pub walls: Vec<Wall>,
    /// Column index at which each wall's range starts (its corner with the
    /// previous wall).
    pub corner_columns: Vec<usize>,
    pub diagnostics: SolveDiagnostics,
}

/// Evenly spaced values of `0..len`, at most `cap` of them, always
/// including both ends when `len > 1`.
fn sample_indices(len: usize, cap: usize) -> Vec<usize> {
    debug_assert!(cap >= 2);
    if len <= cap {
        return (0..len).collect();
    }
    (0..cap).map(|i| i * (len - 1) / (cap - 1)).collect()
}

/// Columns kept for a wall once the corner-adjacent margin is dropped,
/// where boundary elevations mix neighbouring walls. Short ranges keep at
/// least 3 columns; otherwise the wall system is underdetermined.
fn trimmed_columns(columns: &[usize], margin: usize) -> &[usize] {
    if columns.len() >= 2 * margin + 3 {
        &columns[margin..columns.len() - margin]
    } else {
        columns
    }
}

/// Back-projects one wall's trimmed, subsampled columns into boundary rays.
fn segment_rays(
    obs: &BoundaryObservation,
    trimmed: &[usize],
    options: &SolveOptions,
) -> Result<WallRays, SolveError> {
    let mut ceiling = Vec::new();
    let mut floor = Vec::new();
    for &k in &sample_indices(trimmed.len(), options.rays_per_boundary.max(2)) {
        let col = trimmed[k];
        // Extreme noise can push an elevation past the poles; such columns
        // carry no usable ray and are skipped.
        if let Ok(ray) = obs.rig.ray_from_elevation(col, obs.theta_ceiling[col]) {
            ceiling.push(ray);
        }
        if let Ok(ray) = obs.rig.ray_from_elevation(col, obs.theta_floor[col]) {
            floor.push(ray);
        }
    }
    let total = ceiling.len() + floor.len();
    if ceiling.len() < 2 || floor.len() < 2 || total < 5 {
        return Err(SolveError::InsufficientRays { needed: 5, got: total });
    }
    Ok(WallRays::new(ceiling, floor))
}

/// Principal direction of a 2-D point cloud (the total-least-squares line
/// direction), or `None` when the cloud is too small or collapsed.
fn principal_direction(points: &[Vector2<f64>]) -> Option<Vector2<f64>> {
    if points.len() < 2 {
        return None;
    }
    let mean = points.iter().sum::<Vector2<f64>>() / points.len() as f64;
    let (mut xx, mut xy, mut yy) = (0.0, 0.0, 0.0);
    for p in points {
        let d = p - mean;
        xx += d.x * d.x;
        xy += d.x * d.y;
        yy += d.y * d.y;
    }
    if xx + yy < 1e-18 {
        return None;
    }
    let angle = 0.5 * (2.0 * xy).atan2(xx - yy);
    Some(Vector2::new(angle.cos(), angle.sin()))
}

/// Robust wall-direction estimate that ignores the circle offset: treating
/// each ray as if it left the origin puts its boundary point at
/// `cot(theta) * (cos phi, sin phi)`, a point on the wall's plan-view line
/// scaled by the (unknown) boundary height. The scale and the small offset
/// bias move the fitted line but barely turn it, so the direction survives
/// noise that defeats the full wall solver on short segments.
fn central_line_direction(rays: &WallRays) -> Option<Vector2<f64>> {
    let mut doubled = Vector2::zeros();
    for boundary in [&rays.ceiling, &rays.floor] {
        let points: Vec<Vector2<f64>> = boundary
            .iter()
            .filter(|r| {
                r.direction.z.abs() >= MIN_FALLBACK_ELEVATION_TAN * r.direction.xy().norm()
            })
            .map(|r| Vector2::new(r.direction.x / r.direction.z, r.direction.y / r.direction.z))
            .collect();
        if let Some(dir) = principal_direction(&points) {
            // Directions are lines (defined modulo a half turn): average
            // them on the doubled circle, weighted by the sample count.
            let angle = dir.y.atan2(dir.x);
            doubled += points.len() as f64 * Vector2::new((2.0 * angle).cos(), (2.0 * angle).sin());
        }
    }
    if doubled.norm() < 1e-12 {
        return None;
    }
    let angle = 0.5 * doubled.y.atan2(doubled.x);
    Some(Vector2::new(angle.cos(), angle.sin()))
}

/// Angle between two directions viewed as lines (modulo a half turn).
fn line_angle_between(a: Vector2<f64>, b: Vector2<f64>) -> f64 {
    a.dot(&b).abs().clamp(0.0, 1.0).acos()
}

/// Picks the direction the joint stage will trust for one wall: the full
/// estimate when it exists and roughly agrees with the robust line fit, the
/// line fit otherwise.
fn trusted_direction(
    estimate: &Option<WallEstimate>,
    fallback: Option<Vector2<f64>>,
) -> Result<(Vector2<f64>, bool), SolveError> {
    match (estimate, fallback) {
        (Some(est), Some(fb)) => {
            let dir = est.wall.frame.direction2();
            if line_angle_between(dir, fb) <= DIRECTION_AGREEMENT {
                Ok((dir, false))
            } else {
                Ok((fb, true))
            }
        }
        (Some(est), None) => Ok((est.wall.frame.direction2(), false)),
        (None, Some(fb)) => Ok((fb, true)),
        (None, None) => Err(SolveError::DegenerateConfiguration {
            reason: "a wall segment supports neither a full estimate nor a line fit".into(),
        }),
    }
}

/// Plan-view corner of two wall lines `normal . x = d`.
fn wall_intersection(a: &Wall, b: &Wall) -> Result<Vector2<f64>, SolveError> {
    let na = a.frame.normal2();
    let nb = b.frame.normal2();
    let det = cross2(na, nb);
    if det.abs() <= CORNER_PARALLEL_TOL {
        return Err(SolveError::InfeasibleLayout {
            reason: "consecutive walls are parallel and admit no corner".into(),
        });
    }
    Ok(Vector2::new(a.d * nb.y - b.d * na.y, na.x * b.d - nb.x * a.d) / det)
}

/// Recovers a metrically scaled layout from a boundary observation.
///
/// Fails honestly rather than guessing: missing corners, degenerate ray
/// configurations, infeasible height orderings and self-intersecting corner
/// polygons all surface as errors.
pub fn reconstruct_layout(
    obs: &BoundaryObservation,
    options: &SolveOptions,
) -> Result<LayoutSolution, SolveError> {
    let segments = segment_columns(obs, &options.segment).map_err(SolveError::Scene)?;
    let width = obs.width();

    // Single-wall estimates are advisory: the joint stage only needs each
    // wall's direction, so a failed or distrusted estimate falls back to
    // the robust line fit instead of aborting the scene.
    let mut wall_columns = Vec::with_capacity(segments.len());
    let mut rays = Vec::with_capacity(segments.len());
    let mut estimates = Vec::with_capacity(segments.len());
    let mut directions = Vec::with_capacity(segments.len());
    let mut fallback_directions = 0;
    for segment in &segments {
        let columns: Vec<usize> = segment.columns(width).collect();
        let trimmed = trimmed_columns(&columns, options.segment_margin).to_vec();
        let wall_rays = segment_rays(obs, &trimmed, options)?;
        let estimate = solve_wall(&wall_rays.ceiling, &wall_rays.floor).ok();
        let (direction, fell_back) =
            trusted_direction(&estimate, central_line_direction(&wall_rays))?;
        fallback_directions += fell_back as usize;
        wall_columns.push(trimmed);
        rays.push(wall_rays);
        estimates.push(estimate);
        directions.push(direction);
    }

    let (joint, ambiguous_walls, main_direction): (JointSolution, usize, Option<f64>) =
        match options.mode {
            WorldMode::Manhattan => {
                let grouped = classify_directions(&directions, options.ambiguity_margin)?;
                let joint = solve_manhattan(&rays, &grouped.classes)?;
                let ambiguous = grouped.ambiguous.iter().filter(|&&a| a).count();
                (joint, ambiguous, Some(grouped.main_angle))
            }
            WorldMode::Atlanta => (solve_atlanta(&rays, &directions)?, 0, None),
        };

    // Polish against the raw boundary angles; on noise-free data the joint
    // estimate is already the optimum and this is a no-op.
    let shared_angle = matches!(options.mode, WorldMode::Manhattan);
    let polish =
        refine_layout(obs, &wall_columns, &joint.walls, joint.h_c, joint.h_f, shared_angle);
    let (walls, h_c, h_f, refine_rms) = match polish {
        Some(r) => (r.walls, r.h_c, r.h_f, Some(r.rms)),
        None => (joint.walls.clone(), joint.h_c, joint.h_f, None),
    };

    let n = walls.len();
    let vertices = (0..n)
        .map(|i| wall_intersection(&walls[(i + n - 1) % n], &walls[i]))
        .collect::<Result<Vec<_>, _>>()?;
    let layout = Layout::new(vertices, h_c, h_f).map_err(SolveError::Scene)?;

    let diagnostics = SolveDiagnostics {
        max_side_residual: walls
            .iter()
            .zip(&rays)
            .map(|(w, r)| max_side_residual(w, &r.ceiling, &r.floor))
            .fold(0.0, f64::max),
        max_lambda_mismatch: estimates
            .iter()
            .flatten()
            .map(|e| e.lambda_mismatch)
            .fold(0.0, f64::max),
        ambiguous_walls,
        main_direction,
        wall_lambda: estimates.iter().map(|e| e.as_ref().map(|e| e.lambda)).collect(),
        wall_rel_kernel_sigma: estimates
            .iter()
            .map(|e| e.as_ref().map(|e| e.rel_kernel_sigma))
            .collect(),
        joint_rel_guard_sigma: joint.rel_guard_sigma,
        fallback_directions,
        refine_rms,
    };
    Ok(LayoutSolution {
        layout,
        walls,
        corner_columns: segments.iter().map(|s| s.start).collect(),
        diagnostics,
    })
}
