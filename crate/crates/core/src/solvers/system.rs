//! Linear systems for wall recovery.
//!
//! A wall is encoded by the homogeneous seven-vector
//! `W = (u_x, u_y, v_x, v_y, w_x, w_y, d)`: `u` is the horizontal wall
//! direction, `v = h_c u` and `w = h_f u` couple the boundary heights to it,
//! and `d` is the plane offset times `|u|`. With the wall frame convention
//! `e2 = e3 x e1`, a ceiling boundary ray `(xi, xi_bar)` is coplanar with
//! the ceiling line exactly when
//!
//! `xi_bar_1 u_x + xi_bar_2 u_y + xi_2 v_x - xi_1 v_y - xi_3 d = 0`
//!
//! and a floor ray satisfies the same with `v` replaced by `w`. Every row of
//! the wall system is one such equation, so the true wall vector spans the
//! null space.

use nalgebra::DMatrix;

use crate::error::SolveError;
use crate::geometry::ProjectingRay;

/// Width of the single-wall solution vector.
pub const WALL_VECTOR_DIM: usize = 7;

/// Boundary rays observed on one wall.
#[derive(Debug, Clone, Default)]
pub struct WallRays {
    pub ceiling: Vec<ProjectingRay>,
    pub floor: Vec<ProjectingRay>,
}

impl WallRays {
    pub fn new(ceiling: Vec<ProjectingRay>, floor: Vec<ProjectingRay>) -> Self {
        Self { ceiling, floor }
    }

    pub fn total(&self) -> usize {
        self.ceiling.len() + self.floor.len()
    }
}

/// Coefficients a ray contributes against `(u_x, u_y, pair_x, pair_y, d)`,
/// where `pair` is `v` for ceiling rays and `w` for floor rays.
pub(crate) fn ray_coefficients(ray: &ProjectingRay) -> ([f64; 2], [f64; 2], f64) {
    let xi = ray.direction;
    let m = ray.moment();
    ([m.x, m.y], [xi.y, -xi.x], -xi.z)
}

/// Stacks one row per ray: ceiling rays first, then floor rays. Columns are
/// `(u_x, u_y, v_x, v_y, w_x, w_y, d)`.
pub fn build_wall_system(
    ceiling: &[ProjectingRay],
    floor: &[ProjectingRay],
) -> Result<DMatrix<f64>, SolveError> {
    if ceiling.is_empty() && floor.is_empty() {
        return Err(SolveError::InsufficientRays { needed: 1, got: 0 });
    }
    let rows = ceiling.len() + floor.len();
    let mut a = DMatrix::zeros(rows, WALL_VECTOR_DIM);
    for (r, ray) in ceiling.iter().enumerate() {
        let (cu, cv, cd) = ray_coefficients(ray);
        a[(r, 0)] = cu[0];
        a[(r, 1)] = cu[1];
        a[(r, 2)] = cv[0];
        a[(r, 3)] = cv[1];
        a[(r, 6)] = cd;
    }
    let base = ceiling.len();
    for (r, ray) in floor.iter().enumerate() {
        let (cu, cw, cd) = ray_coefficients(ray);
        a[(base + r, 0)] = cu[0];
        a[(base + r, 1)] = cu[1];
        a[(base + r, 4)] = cw[0];
        a[(base + r, 5)] = cw[1];
        a[(base + r, 6)] = cd;
    }
    Ok(a)
}
