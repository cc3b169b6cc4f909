//! Minimal-case wall recovery from two rays per boundary.
//!
//! Four rays leave the wall system with rank four, so its kernel is exactly
//! three-dimensional and the wall lives in the two-parameter family
//! `W(l1, l2) = B0 + l1 B1 + l2 B2`. Requiring `v` and `w` to stay collinear
//! with `u` gives two bivariate quadratics; eliminating `l2` through their
//! resultant leaves a quartic in `l1`, so the problem has at most four
//! solutions. Each real root is polished on the original pair of quadratics
//! with Newton steps before the wall is read off.

use nalgebra::{Complex, DMatrix, DVector, Matrix2, Matrix3, Vector2, Vector3};

use crate::error::SolveError;
use crate::geometry::{ProjectingRay, Wall};

use super::nullspace::SpectralDecomposition;
use super::system::build_wall_system;
use super::wall::{quadratic_roots, sub2, wall_from_vector, QuadraticRoots, RANK_TOL};

/// Maximum number of candidate walls the minimal problem can produce.
pub const MAX_MINIMAL_CANDIDATES: usize = 4;

fn cross2(a: Vector2<f64>, b: Vector2<f64>) -> f64 {
    a.x * b.y - a.y * b.x
}

/// Product of two dense polynomials in ascending-coefficient form.
fn pmul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}

fn padd(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len().max(b.len())];
    for (i, &ai) in a.iter().enumerate() {
        out[i] += ai;
    }
    for (i, &bi) in b.iter().enumerate() {
        out[i] += bi;
    }
    out
}

fn peval(p: &[f64], x: f64) -> f64 {
    p.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

/// Real roots of a dense polynomial via the companion matrix, after
/// trimming a numerically vanishing leading coefficient. Returns `None`
/// when the polynomial vanishes identically.
fn real_roots(coeffs: &[f64]) -> Option<Vec<f64>> {
    let scale = coeffs.iter().fold(0.0_f64, |m, c| m.max(c.abs()));
    if scale == 0.0 {
        return None;
    }
    let mut deg = coeffs.len() - 1;
    while deg > 0 && coeffs[deg].abs() <= 1e-12 * scale {
        deg -= 1;
    }
    if deg == 0 {
        return if coeffs[0].abs() <= 1e-12 * scale { None } else { Some(vec![]) };
    }
    if deg == 1 {
        return Some(vec![-coeffs[0] / coeffs[1]]);
    }
    let lead = coeffs[deg];
    let mut companion = DMatrix::zeros(deg, deg);
    for i in 0..deg {
        companion[(i, deg - 1)] = -coeffs[i] / lead;
        if i > 0 {
            companion[(i, i - 1)] = 1.0;
        }
    }
    let eigen = companion.complex_eigenvalues();
    let mut roots: Vec<f64> = eigen
        .iter()
        .filter(|z: &&Complex<f64>| z.im.abs() <= 1e-7 * (1.0 + z.re.abs()))
        .map(|z| z.re)
        .collect();
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|a, b| (*a - *b).abs() <= 1e-9 * (1.0 + b.abs()));
    Some(roots)
}

/// Quadratic-form matrices of the two collinearity constraints over the
/// kernel basis: `f(t) = t^T Cv t` with `t = (1, l1, l2)`.
fn constraint_matrices(basis: [&DVector<f64>; 3]) -> (Matrix3<f64>, Matrix3<f64>) {
    let u: Vec<_> = basis.iter().map(|b| sub2(b, 0)).collect();
    let v: Vec<_> = basis.iter().map(|b| sub2(b, 1)).collect();
    let w: Vec<_> = basis.iter().map(|b| sub2(b, 2)).collect();
    let cv = Matrix3::from_fn(|i, j| cross2(u[i], v[j]));
    let cw = Matrix3::from_fn(|i, j| cross2(u[i], w[j]));
    (cv, cw)
}

/// A few Newton steps on the exact pair of quadratics; the resultant root
/// only needs to land in the basin.
fn polish(cv: &Matrix3<f64>, cw: &Matrix3<f64>, mut l1: f64, mut l2: f64) -> (f64, f64) {
    let scale = cv.amax().max(cw.amax()).max(1e-300);
    for _ in 0..20 {
        let t = Vector3::new(1.0, l1, l2);
        let f = t.dot(&(cv * t));
        let g = t.dot(&(cw * t));
        if f.abs().max(g.abs()) <= 1e-15 * scale {
            break;
        }
        let gf = (cv + cv.transpose()) * t;
        let gg = (cw + cw.transpose()) * t;
        let jac = Matrix2::new(gf[1], gf[2], gg[1], gg[2]);
        match jac.try_inverse() {
            Some(inv) => {
                let step = inv * Vector2::new(f, g);
                l1 -= step.x;
                l2 -= step.y;
                if step.amax() <= 1e-14 * (1.0 + l1.abs().max(l2.abs())) {
                    break;
                }
            }
            None => break,
        }
    }
    (l1, l2)
}

/// Relative resultant magnitude below which the two collinearity conics are
/// treated as sharing a component, which makes the minimal problem
/// underdetermined.
const RESULTANT_TOL: f64 = 1e-20;

fn candidates_for_pivot(basis: [&DVector<f64>; 3]) -> (Vec<(f64, f64)>, f64) {
    let (cv, cw) = constraint_matrices(basis);
    // Coefficients of f and g as quadratics in l2 whose coefficients are
    // polynomials in l1 (ascending order).
    let a2 = [cv[(2, 2)]];
    let a1 = [cv[(0, 2)] + cv[(2, 0)], cv[(1, 2)] + cv[(2, 1)]];
    let a0 = [cv[(0, 0)], cv[(0, 1)] + cv[(1, 0)], cv[(1, 1)]];
    let b2 = [cw[(2, 2)]];
    let b1 = [cw[(0, 2)] + cw[(2, 0)], cw[(1, 2)] + cw[(2, 1)]];
    let b0 = [cw[(0, 0)], cw[(0, 1)] + cw[(1, 0)], cw[(1, 1)]];

    // Resultant of the two quadratics in l2: P^2 + Q S, a quartic in l1.
    let p = padd(&pmul(&a2, &b0), &pmul(&[-1.0], &pmul(&a0, &b2)));
    let q = padd(&pmul(&a1, &b2), &pmul(&[-1.0], &pmul(&a2, &b1)));
    let s = padd(&pmul(&a1, &b0), &pmul(&[-1.0], &pmul(&a0, &b1)));
    let resultant = padd(&pmul(&p, &p), &pmul(&q, &s));

    // If the resultant cancels far below its natural coefficient scale the
    // conics share a factor and the intersection is a curve, not points.
    let res_scale = (cv.amax() * cw.amax()).max(1e-300).powi(2);
    let res_rel = resultant.iter().fold(0.0_f64, |m, c| m.max(c.abs())) / res_scale;
    if res_rel < RESULTANT_TOL {
        return (vec![], res_rel);
    }

    let Some(l1_roots) = real_roots(&resultant) else {
        return (vec![], res_rel);
    };
    let coeff_scale = cv.amax().max(cw.amax()).max(1e-300);
    let mut pairs = Vec::new();
    for l1 in l1_roots {
        let pv = peval(&p, l1);
        let qv = peval(&q, l1);
        let sv = peval(&s, l1);
        if qv.abs() >= pv.abs() && qv.abs() > 1e-12 * coeff_scale {
            pairs.push(polish(&cv, &cw, l1, pv / qv));
        } else if pv.abs() > 1e-12 * coeff_scale {
            pairs.push(polish(&cv, &cw, l1, -sv / pv));
        } else {
            // Both elimination denominators vanish: the quadratics in l2
            // are proportional at this root; fall back to solving one.
            let a2v = a2[0];
            let a1v = peval(&a1, l1);
            let a0v = peval(&a0, l1);
            match quadratic_roots(a0v, a1v, a2v) {
                QuadraticRoots::One(r) => pairs.push(polish(&cv, &cw, l1, r)),
                QuadraticRoots::Two(r, t) => {
                    pairs.push(polish(&cv, &cw, l1, r));
                    pairs.push(polish(&cv, &cw, l1, t));
                }
                QuadraticRoots::Any => pairs.push(polish(&cv, &cw, l1, 0.0)),
                QuadraticRoots::None { .. } => {}
            }
        }
    }
    (pairs, res_rel)
}

fn same_wall(a: &Wall, b: &Wall) -> bool {
    let dir_dot = a.frame.direction2().dot(&b.frame.direction2()).abs();
    dir_dot > 1.0 - 1e-7
        && (a.d - b.d).abs() < 1e-6 * (1.0 + a.d.abs())
        && (a.h_c - b.h_c).abs() < 1e-6
        && (a.h_f - b.h_f).abs() < 1e-6
}

/// Solves the minimal wall problem from exactly two ceiling and two floor
/// rays, returning up to [`MAX_MINIMAL_CANDIDATES`] candidate walls. The
/// caller disambiguates, e.g. with an extra ray or a feasibility test.
pub fn solve_wall_minimal(
    ceiling: &[ProjectingRay],
    floor: &[ProjectingRay],
) -> Result<Vec<Wall>, SolveError> {
    if ceiling.len() != 2 || floor.len() != 2 {
        return Err(SolveError::InsufficientRays {
            needed: 4,
            got: ceiling.len() + floor.len(),
        });
    }
    let a = build_wall_system(ceiling, floor)?;
    let dec = SpectralDecomposition::of(&a)?;
    if dec.relative_sigma(3) < RANK_TOL {
        return Err(SolveError::DegenerateConfiguration {
            reason: "minimal ray set is rank deficient; the kernel exceeds three dimensions".into(),
        });
    }

    // The parameterization pins a unit coefficient on one basis vector; if
    // every solution is orthogonal to that pivot, rotate the roles.
    let mut walls: Vec<Wall> = Vec::new();
    let mut degenerate_resultant = false;
    for pivot in 0..3 {
        let basis = [
            &dec.vectors[pivot],
            &dec.vectors[(pivot + 1) % 3],
            &dec.vectors[(pivot + 2) % 3],
        ];
        let (pairs, res_rel) = candidates_for_pivot(basis);
        degenerate_resultant = res_rel < RESULTANT_TOL;
        if degenerate_resultant {
            break;
        }
        for (l1, l2) in pairs {
            if !(l1.is_finite() && l2.is_finite()) {
                continue;
            }
            let vector = basis[0] + l1 * basis[1] + l2 * basis[2];
            if let Ok(wall) = wall_from_vector(&vector) {
                if !walls.iter().any(|w| same_wall(w, &wall)) {
                    walls.push(wall);
                }
            }
        }
        if !walls.is_empty() {
            break;
        }
    }
    if degenerate_resultant {
        // Happens in particular when every floor ray shares its azimuth
        // with a ceiling ray: both boundaries then see the wall at the same
        // horizontal distance per azimuth, the floor constraints duplicate
        // the ceiling ones, and a one-parameter family of walls fits.
        return Err(SolveError::DegenerateConfiguration {
            reason: "the two collinearity constraints coincide on the kernel; \
                     a one-parameter family of walls fits these four rays"
                .into(),
        });
    }
    if walls.is_empty() {
        return Err(SolveError::NoRealRoot);
    }
    walls.truncate(MAX_MINIMAL_CANDIDATES);
    Ok(walls)
}
