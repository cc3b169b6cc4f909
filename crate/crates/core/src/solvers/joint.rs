//! Joint recovery of all walls with shared ceiling and floor heights.
//!
//! Estimating walls one by one leaves each with its own pair of boundary
//! heights. Real interiors share one ceiling and one floor, and coupling
//! the walls through that constraint both regularizes the estimate and
//! fixes the relative scale of the whole layout.
//!
//! Two couplings are provided. The right-angled ("Manhattan") solver also
//! shares a single horizontal direction pair across all walls: every wall
//! is either aligned with the dominant direction `u` or perpendicular to
//! it, so the unknowns shrink to `(u, v, w, d_1..d_N)` with `v = h_c u`,
//! `w = h_f u` recovered from collinearity as in the single-wall case. The
//! general ("Atlanta") solver keeps per-wall directions as inputs, rotates
//! each wall's rays into its own frame, and solves the inhomogeneous least
//! squares for `(h_c, h_f, d_1..d_N)` directly.

use nalgebra::{DMatrix, DVector, Vector2};

use crate::error::SolveError;
use crate::geometry::{Wall, WallFrame};

use super::directions::ManhattanClass;
use super::nullspace::SpectralDecomposition;
use super::system::{ray_coefficients, WallRays};
use super::wall::{max_side_residual, RANK_TOL};

/// Walls recovered under shared boundary heights.
#[derive(Debug, Clone)]
pub struct JointSolution {
    /// One wall per input group, in input order, each with `d > 0` and the
    /// shared heights filled in.
    pub walls: Vec<Wall>,
    pub h_c: f64,
    pub h_f: f64,
    /// Largest `|side|` residual over all rays and recovered lines.
    pub residual: f64,
    /// Relative size of the second-smallest singular value (right-angled
    /// solver) or smallest (general solver); small values mean the data do
    /// not determine the layout.
    pub rel_guard_sigma: f64,
}

fn validate_input(walls: &[WallRays]) -> Result<usize, SolveError> {
    if walls.is_empty() {
        return Err(SolveError::InsufficientRays { needed: 1, got: 0 });
    }
    let mut total = 0;
    for rays in walls {
        if rays.ceiling.is_empty() || rays.floor.is_empty() {
            return Err(SolveError::InsufficientRays { needed: 2, got: rays.total() });
        }
        total += rays.total();
    }
    Ok(total)
}

/// Rotates a coefficient pair for walls perpendicular to the shared
/// direction: substituting `u' = (-u_y, u_x)` turns a row coefficient pair
/// `(a, b)` on `u'` into `(b, -a)` on `u`.
fn orient(pair: [f64; 2], class: ManhattanClass) -> [f64; 2] {
    match class {
        ManhattanClass::Primary => pair,
        ManhattanClass::Orthogonal => [pair[1], -pair[0]],
    }
}

/// Recovers all walls of a right-angled interior at once.
///
/// Every wall must come with its perpendicularity class; rays of primary
/// walls constrain `(u, v, w)` directly and perpendicular walls constrain
/// the quarter-turned copies, so one homogeneous system in
/// `(u, v, w, d_1..d_N)` covers the whole room.
pub fn solve_manhattan(
    walls: &[WallRays],
    classes: &[ManhattanClass],
) -> Result<JointSolution, SolveError> {
    if walls.len() != classes.len() {
        return Err(SolveError::WallCountMismatch {
            walls: walls.len(),
            other: classes.len(),
            what: "direction classes",
        });
    }
    let total = validate_input(walls)?;
    let n = walls.len();
    let cols = 6 + n;
    if total < cols {
        return Err(SolveError::InsufficientRays { needed: cols, got: total });
    }

    let mut a = DMatrix::zeros(total, cols);
    let mut row = 0;
    for (i, (rays, &class)) in walls.iter().zip(classes).enumerate() {
        for (is_floor, ray) in rays
            .ceiling
            .iter()
            .map(|r| (false, r))
            .chain(rays.floor.iter().map(|r| (true, r)))
        {
            let (cu, cpair, cd) = ray_coefficients(ray);
            let cu = orient(cu, class);
            let cpair = orient(cpair, class);
            let pair_base = if is_floor { 4 } else { 2 };
            a[(row, 0)] = cu[0];
            a[(row, 1)] = cu[1];
            a[(row, pair_base)] = cpair[0];
            a[(row, pair_base + 1)] = cpair[1];
            a[(row, 6 + i)] = cd;
            row += 1;
        }
    }

    let dec = SpectralDecomposition::of(&a)?;
    let rel_guard = dec.relative_sigma(1);
    if rel_guard < RANK_TOL {
        return Err(SolveError::DegenerateConfiguration {
            reason: "joint wall system does not determine a unique layout".into(),
        });
    }
    let x = &dec.vectors[0];
    let u = Vector2::new(x[0], x[1]);
    let nu = u.norm();
    if nu < 1e-12 {
        return Err(SolveError::DegenerateConfiguration {
            reason: "recovered shared direction vanishes".into(),
        });
    }
    let h_c = u.dot(&Vector2::new(x[2], x[3])) / (nu * nu);
    let h_f = u.dot(&Vector2::new(x[4], x[5])) / (nu * nu);
    if h_c <= h_f {
        return Err(SolveError::NoFeasibleRoot);
    }

    let u_hat = u / nu;
    let mut out = Vec::with_capacity(n);
    for (i, &class) in classes.iter().enumerate() {
        let mut dir = match class {
            ManhattanClass::Primary => u_hat,
            ManhattanClass::Orthogonal => Vector2::new(-u_hat.y, u_hat.x),
        };
        let mut d = x[6 + i] / nu;
        if d < 0.0 {
            dir = -dir;
            d = -d;
        }
        let frame = WallFrame::from_direction(dir).map_err(|_| {
            SolveError::DegenerateConfiguration { reason: "wall direction is not normalizable".into() }
        })?;
        out.push(Wall { frame, d, h_c, h_f });
    }
    let residual = joint_residual(&out, walls);
    Ok(JointSolution { walls: out, h_c, h_f, residual, rel_guard_sigma: rel_guard })
}

/// Recovers all walls given their horizontal directions.
///
/// Rotating a wall's rays into its own frame reduces each coplanarity
/// condition to a row that is linear in `(h_c, h_f, d_i)` with a constant
/// term, so the whole interior solves as one inhomogeneous least-squares
/// problem. Rays through the vertical axis of the camera circle contribute
/// a zero constant term; if all rays do (a central camera), the true
/// heights and offsets lie in the coefficient matrix's null space, every
/// scaled copy fits equally well, and the rank guard rejects the solve
/// instead of inventing a scale.
pub fn solve_atlanta(
    walls: &[WallRays],
    directions: &[Vector2<f64>],
) -> Result<JointSolution, SolveError> {
    if walls.len() != directions.len() {
        return Err(SolveError::WallCountMismatch {
            walls: walls.len(),
            other: directions.len(),
            what: "directions",
        });
    }
    let total = validate_input(walls)?;
    let n = walls.len();
    let cols = 2 + n;
    if total < cols {
        return Err(SolveError::InsufficientRays { needed: cols, got: total });
    }
    let frames: Vec<WallFrame> = directions
        .iter()
        .map(|d| {
            WallFrame::from_direction(*d).map_err(|_| SolveError::DegenerateConfiguration {
                reason: "input wall direction is not normalizable".into(),
            })
        })
        .collect::<Result<_, _>>()?;

    let mut a = DMatrix::zeros(total, cols);
    let mut b = DVector::zeros(total);
    let mut row = 0;
    for (i, (rays, frame)) in walls.iter().zip(&frames).enumerate() {
        for (is_floor, ray) in rays
            .ceiling
            .iter()
            .map(|r| (false, r))
            .chain(rays.floor.iter().map(|r| (true, r)))
        {
            let local = frame.ray_to_local(ray);
            let height_col = if is_floor { 1 } else { 0 };
            a[(row, height_col)] = local.direction.y;
            a[(row, 2 + i)] = -local.direction.z;
            b[row] = -local.moment().x;
            row += 1;
        }
    }

    let svd = a.clone().try_svd(true, true, f64::EPSILON, 0).ok_or(
        SolveError::DegenerateConfiguration {
            reason: "singular value decomposition did not converge".into(),
        },
    )?;
    let smallest = svd.singular_values.iter().cloned().fold(f64::INFINITY, f64::min);
    let largest = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let rel_guard = if largest > 0.0 { smallest / largest } else { 0.0 };
    if rel_guard < RANK_TOL {
        return Err(SolveError::DegenerateConfiguration {
            reason: "joint wall system does not determine a unique layout".into(),
        });
    }
    let x = svd.solve(&b, f64::EPSILON).map_err(|reason| {
        SolveError::DegenerateConfiguration { reason: reason.to_string() }
    })?;
    let h_c = x[0];
    let h_f = x[1];
    if h_c <= h_f {
        return Err(SolveError::NoFeasibleRoot);
    }

    let mut out = Vec::with_capacity(n);
    for (i, frame) in frames.iter().enumerate() {
        let mut frame = *frame;
        let mut d = x[2 + i];
        if d < 0.0 {
            frame = frame.flipped();
            d = -d;
        }
        out.push(Wall { frame, d, h_c, h_f });
    }
    let residual = joint_residual(&out, walls);
    Ok(JointSolution { walls: out, h_c, h_f, residual, rel_guard_sigma: rel_guard })
}

fn joint_residual(recovered: &[Wall], rays: &[WallRays]) -> f64 {
    recovered
        .iter()
        .zip(rays)
        .map(|(w, r)| max_side_residual(w, &r.ceiling, &r.floor))
        .fold(0.0, f64::max)
}
