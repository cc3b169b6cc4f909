//! Random room generation.
//!
//! Manhattan rooms are axis-aligned rectangles with rectangular corner
//! notches carved out (then rotated by a random angle); Atlanta rooms are
//! star-shaped polygons around the origin with per-vertex radii. Both are
//! rejection-sampled until the room is fully observable from the camera
//! circle: every wall owns one contiguous azimuth arc of minimum width, the
//! walls appear in boundary order during the sweep, no two walls are
//! collinear, and the circle keeps its clearance. A single panorama cannot
//! see past a depth discontinuity, so rooms that would self-occlude are
//! rejected rather than rendered with hidden walls.

use nalgebra::{Rotation2, Vector2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::SceneError;
use crate::geom2d::{self, Vec2};
use crate::scene::{visible_wall, Layout};

/// Wall direction regime of generated rooms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WorldMode {
    /// Two perpendicular wall direction classes.
    Manhattan,
    /// Arbitrary per-wall directions, shared vertical axis.
    Atlanta,
}

impl std::fmt::Display for WorldMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            WorldMode::Manhattan => write!(f, "manhattan"),
            WorldMode::Atlanta => write!(f, "atlanta"),
        }
    }
}

/// Parameters of a reproducible synthetic dataset. Layout `index` of a spec
/// is a pure function of `(seed, index)`.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct DatasetSpec {
    pub mode: WorldMode,
    pub n_layouts: usize,
    pub walls_min: usize,
    pub walls_max: usize,
    pub seed: u64,
    /// Ceiling height range above the camera plane, meters.
    pub ceiling_range: (f64, f64),
    /// Floor height range (negative values), meters.
    pub floor_range: (f64, f64),
    /// Range of wall offsets from the origin, meters.
    pub size_range: (f64, f64),
    /// Minimum distance from the origin to any wall; must exceed the camera
    /// circle radius by a safety margin.
    pub clearance: f64,
}

impl DatasetSpec {
    pub fn new(mode: WorldMode, n_layouts: usize, walls_min: usize, walls_max: usize, seed: u64) -> Self {
        Self {
            mode,
            n_layouts,
            walls_min,
            walls_max,
            seed,
            ceiling_range: (1.2, 1.9),
            floor_range: (-1.9, -1.2),
            size_range: (1.6, 4.2),
            clearance: 0.7,
        }
    }

    pub fn validate(&self) -> Result<(), SceneError> {
        let reason = if self.walls_min < 3 || self.walls_min > self.walls_max {
            Some(format!("wall range {}:{} invalid", self.walls_min, self.walls_max))
        } else if self.mode == WorldMode::Manhattan && !(self.walls_min..=self.walls_max).any(|n| n >= 4 && n % 2 == 0) {
            Some(format!("manhattan rooms need an even wall count >= 4 in {}:{}", self.walls_min, self.walls_max))
        } else if !(self.ceiling_range.0 > 0.0 && self.ceiling_range.0 <= self.ceiling_range.1) {
            Some("ceiling range must be positive and ordered".into())
        } else if !(self.floor_range.1 < 0.0 && self.floor_range.0 <= self.floor_range.1) {
            Some("floor range must be negative and ordered".into())
        } else if !(self.clearance > 0.0 && self.size_range.0 > self.clearance && self.size_range.0 <= self.size_range.1) {
            Some("size range must be ordered and exceed the clearance".into())
        } else {
            None
        };
        match reason {
            Some(reason) => Err(SceneError::InvalidLayout { reason }),
            None => Ok(()),
        }
    }
}

/// Maximum proposal attempts per layout before giving up.
const MAX_ATTEMPTS: usize = 4000;
/// Minimum azimuth arc each wall must subtend, radians (about 3.5 degrees:
/// ten columns on a 1024-column panorama, enough rays to solve the wall and
/// enough separation to keep corner spikes distinct).
const MIN_ARC: f64 = 0.061;
/// Azimuth samples used to verify the visibility sweep of a proposal.
const SWEEP_SAMPLES: usize = 2048;

/// Generates layout `index` of the dataset, deterministically in
/// `(spec.seed, index)`.
pub fn generate_layout(spec: &DatasetSpec, index: u64) -> Result<Layout, SceneError> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    rng.set_stream(index.wrapping_add(1));
    for _ in 0..MAX_ATTEMPTS {
        let proposal = match spec.mode {
            WorldMode::Manhattan => propose_manhattan(spec, &mut rng),
            WorldMode::Atlanta => propose_atlanta(spec, &mut rng),
        };
        let Some(vertices) = proposal else { continue };
        let h_c = rng.gen_range(spec.ceiling_range.0..=spec.ceiling_range.1);
        let h_f = rng.gen_range(spec.floor_range.0..=spec.floor_range.1);
        let Ok(layout) = Layout::new(vertices, h_c, h_f) else { continue };
        if validate_observable(&layout, spec.clearance) {
            return Ok(layout);
        }
    }
    Err(SceneError::GenerationFailed { attempts: MAX_ATTEMPTS, seed: spec.seed, index })
}

fn propose_manhattan(spec: &DatasetSpec, rng: &mut ChaCha8Rng) -> Option<Vec<Vec2>> {
    let evens: Vec<usize> =
        (spec.walls_min..=spec.walls_max).filter(|n| *n >= 4 && n % 2 == 0).collect();
    let n = evens[rng.gen_range(0..evens.len())];
    let notches = (n - 4) / 2;

    let lo = (spec.clearance + 0.3).max(spec.size_range.0);
    let hi = spec.size_range.1.max(lo + 0.1);
    // Extents toward +x, +y, -x, -y.
    let ext: [f64; 4] = std::array::from_fn(|_| rng.gen_range(lo..=hi));

    // Pick distinct corners to notch; corner c sits between extents
    // ext[c] and ext[(c + 1) % 4] (corner 0 = (+x, +y), then CCW).
    let mut corners = [0usize, 1, 2, 3];
    for i in (1..4).rev() {
        corners.swap(i, rng.gen_range(0..=i));
    }
    let mut notch = [Option::<(f64, f64)>::None; 4];
    for &c in corners.iter().take(notches) {
        let u = rng.gen_range(0.2..0.5);
        let v = rng.gen_range(0.2..0.5);
        notch[c] = Some((u, v));
    }

    // Walk corners CCW starting at (+x, -y); emit 1 or 3 vertices each.
    let signs = [(1.0, 1.0), (-1.0, 1.0), (-1.0, -1.0), (1.0, -1.0)];
    let mut vertices: Vec<Vec2> = Vec::with_capacity(n);
    for c in [3usize, 0, 1, 2] {
        let (sx, sy) = signs[c];
        let ex = if sx > 0.0 { ext[0] } else { ext[2] };
        let ey = if sy > 0.0 { ext[1] } else { ext[3] };
        match notch[c] {
            None => vertices.push(Vec2::new(sx * ex, sy * ey)),
            Some((u, v)) => {
                let x_in = sx * ex * (1.0 - u);
                let y_in = sy * ey * (1.0 - v);
                // CCW order around the notch depends on the quadrant parity.
                let (a, b, c3) = if sx * sy > 0.0 {
                    (Vec2::new(sx * ex, y_in), Vec2::new(x_in, y_in), Vec2::new(x_in, sy * ey))
                } else {
                    (Vec2::new(x_in, sy * ey), Vec2::new(x_in, y_in), Vec2::new(sx * ex, y_in))
                };
                vertices.extend([a, b, c3]);
            }
        }
    }

    let rot = Rotation2::new(rng.gen_range(0.0..std::f64::consts::TAU));
    Some(vertices.into_iter().map(|v| rot * v).collect())
}

fn propose_atlanta(spec: &DatasetSpec, rng: &mut ChaCha8Rng) -> Option<Vec<Vec2>> {
    let n = rng.gen_range(spec.walls_min..=spec.walls_max);
    // Angular gaps with a guaranteed floor, normalized to the full turn.
    let raw: Vec<f64> = (0..n).map(|_| 0.45 + rng.gen::<f64>()).collect();
    let total: f64 = raw.iter().sum();
    let offset = rng.gen_range(0.0..std::f64::consts::TAU);
    let lo = (spec.clearance + 0.45).max(spec.size_range.0);
    let hi = spec.size_range.1.max(lo + 0.1);
    let mut angle = offset;
    let mut radius = rng.gen_range(lo..=hi);
    let mut vertices = Vec::with_capacity(n);
    for g in &raw {
        vertices.push(Vec2::new(radius * angle.cos(), radius * angle.sin()));
        angle += g / total * std::f64::consts::TAU;
        // Radius random walk keeps consecutive walls from grazing incidence.
        radius = (radius * (0.7 + 0.6 * rng.gen::<f64>())).clamp(lo, hi);
    }
    Some(vertices)
}

/// True if every wall is seen in one contiguous sweep arc of at least
/// [`MIN_ARC`], walls appear in boundary order, no two walls are collinear,
/// and clearance holds. These are exactly the conditions under which a
/// single panorama determines the full polygon.
fn validate_observable(layout: &Layout, clearance: f64) -> bool {
    if layout.validate_camera_clearance(clearance).is_err() {
        return false;
    }
    let n = layout.wall_count();

    // Collinear wall pair check.
    for i in 0..n {
        let (a0, a1) = layout.wall_segment(i);
        let da = (a1 - a0).normalize();
        for j in i + 1..n {
            let (b0, b1) = layout.wall_segment(j);
            let db = (b1 - b0).normalize();
            if geom2d::cross2(da, db).abs() < 1e-6 && geom2d::cross2(da, b0 - a0).abs() < 1e-6 {
                return false;
            }
        }
    }

    // Sweep the panorama and record the visible-wall run structure.
    let step = std::f64::consts::TAU / SWEEP_SAMPLES as f64;
    let mut labels = Vec::with_capacity(SWEEP_SAMPLES);
    for k in 0..SWEEP_SAMPLES {
        match visible_wall(layout, Vector2::zeros(), k as f64 * step) {
            Ok((wall, _)) => labels.push(wall),
            Err(_) => return false,
        }
    }
    let mut runs: Vec<(usize, usize)> = Vec::new(); // (wall, sample count)
    for &w in &labels {
        match runs.last_mut() {
            Some((last, count)) if *last == w => *count += 1,
            _ => runs.push((w, 1)),
        }
    }
    if runs.len() >= 2 && runs.first().unwrap().0 == runs.last().unwrap().0 {
        let (_, tail) = runs.pop().unwrap();
        runs.first_mut().unwrap().1 += tail;
    }
    if runs.len() != n {
        return false; // a wall is hidden or split: the room self-occludes
    }
    let min_samples = (MIN_ARC / step).ceil() as usize;
    if runs.iter().any(|&(_, count)| count < min_samples) {
        return false;
    }
    // Walls must appear in boundary order (the sweep is CCW like the polygon).
    let start = runs.iter().position(|&(w, _)| w == 0).unwrap();
    (0..n).all(|k| runs[(start + k) % n].0 == k)
}
