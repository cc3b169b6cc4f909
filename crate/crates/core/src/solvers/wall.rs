//! Single-wall recovery from boundary rays on both boundaries.
//!
//! The over-determined solver takes all rays observed on one wall, computes
//! the two smallest right singular vectors `W0`, `W1` of the wall system and
//! searches the pencil `W(lambda) = W0 + lambda W1` for the member whose `v`
//! and `w` blocks are collinear with `u`. Each collinearity condition is a
//! quadratic in `lambda`; the wall is read off at their common root. On
//! exact data `W0` already is the wall and the common root sits at zero, but
//! under noise the second vector supplies a useful correction direction.

use nalgebra::{DVector, Vector2};

use crate::error::SolveError;
use crate::geometry::{side, ProjectingRay, Wall, WallFrame};

use super::nullspace::SpectralDecomposition;
use super::system::build_wall_system;

/// Relative singular-value level below which a direction counts as null.
pub(crate) const RANK_TOL: f64 = 1e-10;

/// A root of one of the collinearity quadratics, with the boundary heights
/// the corresponding pencil member would imply.
#[derive(Debug, Clone, Copy)]
pub struct RootCandidate {
    pub lambda: f64,
    pub h_c: f64,
    pub h_f: f64,
}

/// Result of the over-determined single-wall solver.
#[derive(Debug, Clone)]
pub struct WallEstimate {
    pub wall: Wall,
    /// Pencil parameter at which the wall was read off.
    pub lambda: f64,
    /// Gap between the paired roots of the two quadratics.
    pub lambda_mismatch: f64,
    /// Roots that were considered and not selected.
    pub rejected_roots: Vec<RootCandidate>,
    /// Smallest singular value relative to the largest.
    pub rel_kernel_sigma: f64,
    /// Third-smallest singular value relative to the largest; values near
    /// zero indicate a degenerate (rank-deficient) ray configuration.
    pub rel_guard_sigma: f64,
    /// Largest `|side|` residual of the input rays against the recovered
    /// boundary lines.
    pub residual: f64,
}

/// Real roots of `c0 + c1 x + c2 x^2`, honouring near-degenerate leading
/// coefficients. `Any` means the polynomial vanishes identically.
#[derive(Debug, Clone, PartialEq)]
pub(crate) enum QuadraticRoots {
    Any,
    None { vertex: f64 },
    One(f64),
    Two(f64, f64),
}

pub(crate) fn quadratic_roots(c0: f64, c1: f64, c2: f64) -> QuadraticRoots {
    let scale = c0.abs().max(c1.abs()).max(c2.abs());
    if scale == 0.0 {
        return QuadraticRoots::Any;
    }
    if c2.abs() <= 1e-13 * scale {
        if c1.abs() <= 1e-13 * scale {
            // No root, and no meaningful vertex either; report the origin.
            return QuadraticRoots::None { vertex: 0.0 };
        }
        return QuadraticRoots::One(-c0 / c1);
    }
    let disc = c1 * c1 - 4.0 * c2 * c0;
    let disc_scale = c1 * c1 + 4.0 * (c2 * c0).abs();
    if disc < -1e-12 * disc_scale {
        return QuadraticRoots::None { vertex: -c1 / (2.0 * c2) };
    }
    if disc <= 1e-12 * disc_scale {
        return QuadraticRoots::One(-c1 / (2.0 * c2));
    }
    let s = disc.sqrt();
    let q = if c1 >= 0.0 { -0.5 * (c1 + s) } else { -0.5 * (c1 - s) };
    QuadraticRoots::Two(q / c2, c0 / q)
}

impl QuadraticRoots {
    fn as_candidates(&self) -> Vec<f64> {
        match *self {
            QuadraticRoots::Any => vec![],
            QuadraticRoots::None { vertex } => vec![vertex],
            QuadraticRoots::One(r) => vec![r],
            QuadraticRoots::Two(a, b) => vec![a, b],
        }
    }
}

pub(crate) fn sub2(v: &DVector<f64>, block: usize) -> Vector2<f64> {
    Vector2::new(v[2 * block], v[2 * block + 1])
}

/// Extracts a physical wall from a seven-vector. Returns the wall together
/// with the boundary heights implied by projecting `v` and `w` onto `u`.
pub(crate) fn wall_from_vector(w: &DVector<f64>) -> Result<Wall, SolveError> {
    let u = sub2(w, 0);
    let n = u.norm();
    if n < 1e-12 * w.norm() {
        return Err(SolveError::DegenerateConfiguration {
            reason: "recovered wall has a vanishing direction block".into(),
        });
    }
    let h_c = u.dot(&sub2(w, 1)) / (n * n);
    let h_f = u.dot(&sub2(w, 2)) / (n * n);
    let mut dir = u / n;
    let mut d = w[6] / n;
    if d < 0.0 {
        // Reversing the wall direction flips the in-plane normal, and with
        // it the sign of the offset; the physical plane is unchanged.
        dir = -dir;
        d = -d;
    }
    let frame = WallFrame::from_direction(dir)
        .map_err(|_| SolveError::DegenerateConfiguration {
            reason: "recovered wall direction is not normalizable".into(),
        })?;
    Ok(Wall { frame, d, h_c, h_f })
}

pub(crate) fn heights_of_pencil(w0: &DVector<f64>, w1: &DVector<f64>, lambda: f64) -> (f64, f64) {
    let w = w0 + lambda * w1;
    let u = sub2(&w, 0);
    let n2 = u.norm_squared();
    (u.dot(&sub2(&w, 1)) / n2, u.dot(&sub2(&w, 2)) / n2)
}

/// Largest `|side|` residual of the rays against the wall's boundary lines.
pub fn max_side_residual(wall: &Wall, ceiling: &[ProjectingRay], floor: &[ProjectingRay]) -> f64 {
    let cl = wall.ceiling_line();
    let fl = wall.floor_line();
    let c = ceiling.iter().map(|r| side(r, &cl).abs());
    let f = floor.iter().map(|r| side(r, &fl).abs());
    c.chain(f).fold(0.0, f64::max)
}

fn cross2(a: Vector2<f64>, b: Vector2<f64>) -> f64 {
    a.x * b.y - a.y * b.x
}

/// Recovers a wall from at least `2 + 2` rays with at least five in total.
///
/// Needs two rays on each boundary (otherwise the heights are unconstrained)
/// and five rays overall so that the system determines a two-dimensional
/// pencil rather than a full kernel.
pub fn solve_wall(ceiling: &[ProjectingRay], floor: &[ProjectingRay]) -> Result<WallEstimate, SolveError> {
    if ceiling.len() < 2 || floor.len() < 2 || ceiling.len() + floor.len() < 5 {
        return Err(SolveError::InsufficientRays {
            needed: 5,
            got: ceiling.len() + floor.len(),
        });
    }
    let a = build_wall_system(ceiling, floor)?;
    let dec = SpectralDecomposition::of(&a)?;
    let rel_guard = dec.relative_sigma(2);
    if rel_guard < RANK_TOL {
        return Err(SolveError::DegenerateConfiguration {
            reason: format!(
                "wall system kernel exceeds two dimensions (relative sigma_2 = {rel_guard:.3e}); \
                 rays may all pass through one point"
            ),
        });
    }
    let w0 = &dec.vectors[0];
    let w1 = &dec.vectors[1];

    let (u0, v0, f0) = (sub2(w0, 0), sub2(w0, 1), sub2(w0, 2));
    let (u1, v1, f1) = (sub2(w1, 0), sub2(w1, 1), sub2(w1, 2));
    let qv = quadratic_roots(
        cross2(u0, v0),
        cross2(u0, v1) + cross2(u1, v0),
        cross2(u1, v1),
    );
    let qw = quadratic_roots(
        cross2(u0, f0),
        cross2(u0, f1) + cross2(u1, f0),
        cross2(u1, f1),
    );

    let (rv, rw) = match (&qv, &qw) {
        (QuadraticRoots::Any, QuadraticRoots::Any) => (vec![0.0], vec![0.0]),
        (QuadraticRoots::Any, other) => {
            let r = other.as_candidates();
            (r.clone(), r)
        }
        (other, QuadraticRoots::Any) => {
            let r = other.as_candidates();
            (r.clone(), r)
        }
        (a, b) => (a.as_candidates(), b.as_candidates()),
    };
    if rv.is_empty() || rw.is_empty() {
        return Err(SolveError::NoRealRoot);
    }

    // Pair the roots of the two quadratics by proximity and keep the best
    // physically feasible pairing (ceiling above floor).
    let mut best: Option<(f64, f64, f64)> = None; // (mismatch, root_v, root_w)
    for &a in &rv {
        for &b in &rw {
            let mismatch = (a - b).abs();
            let lambda = 0.5 * (a + b);
            let (h_c, h_f) = heights_of_pencil(w0, w1, lambda);
            if h_c <= h_f {
                continue;
            }
            if best.is_none_or(|(m, _, _)| mismatch < m) {
                best = Some((mismatch, a, b));
            }
        }
    }
    let (mismatch, root_v, root_w) = best.ok_or(SolveError::NoFeasibleRoot)?;
    let lambda = 0.5 * (root_v + root_w);

    let mut rejected = Vec::new();
    for &r in rv.iter().chain(rw.iter()) {
        if (r - root_v).abs() > 1e-12 && (r - root_w).abs() > 1e-12 {
            let (h_c, h_f) = heights_of_pencil(w0, w1, r);
            rejected.push(RootCandidate { lambda: r, h_c, h_f });
        }
    }

    let wall = wall_from_vector(&(w0 + lambda * w1))?;
    let residual = max_side_residual(&wall, ceiling, floor);
    Ok(WallEstimate {
        wall,
        lambda,
        lambda_mismatch: mismatch,
        rejected_roots: rejected,
        rel_kernel_sigma: dec.relative_sigma(0),
        rel_guard_sigma: rel_guard,
        residual,
    })
}
