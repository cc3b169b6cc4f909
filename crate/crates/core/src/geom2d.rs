//! Plan-view polygon helpers: orientation, simplicity, containment,
//! clipping and areas. Polygons are vertex lists; edges join consecutive
//! vertices and wrap around.

use nalgebra::Vector2;

pub type Vec2 = Vector2<f64>;

/// 2-D cross product (z component of the 3-D cross).
pub fn cross2(a: Vec2, b: Vec2) -> f64 {
    a.x * b.y - a.y * b.x
}

/// Signed polygon area; positive for counter-clockwise vertex order.
pub fn signed_area(poly: &[Vec2]) -> f64 {
    let n = poly.len();
    let mut sum = 0.0;
    for i in 0..n {
        sum += cross2(poly[i], poly[(i + 1) % n]);
    }
    0.5 * sum
}

pub fn is_ccw(poly: &[Vec2]) -> bool {
    signed_area(poly) > 0.0
}

/// Strict point-in-polygon test by crossing number. Points on the boundary
/// are not guaranteed either way; callers that care use distance checks.
pub fn contains_point(poly: &[Vec2], p: Vec2) -> bool {
    let n = poly.len();
    let mut inside = false;
    for i in 0..n {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        if (a.y > p.y) != (b.y > p.y) {
            let x_cross = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if p.x < x_cross {
                inside = !inside;
            }
        }
    }
    inside
}

/// Distance from a point to a segment.
pub fn dist_point_segment(p: Vec2, a: Vec2, b: Vec2) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_squared();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = ((p - a).dot(&ab) / len2).clamp(0.0, 1.0);
    (p - (a + t * ab)).norm()
}

/// Minimum distance from a point to the polygon boundary, with the index of
/// the closest edge.
pub fn dist_to_boundary(poly: &[Vec2], p: Vec2) -> (f64, usize) {
    let n = poly.len();
    let mut best = (f64::INFINITY, 0);
    for i in 0..n {
        let d = dist_point_segment(p, poly[i], poly[(i + 1) % n]);
        if d < best.0 {
            best = (d, i);
        }
    }
    best
}

/// True if segments `a0-a1` and `b0-b1` properly intersect (cross at an
/// interior point of both).
fn segments_cross(a0: Vec2, a1: Vec2, b0: Vec2, b1: Vec2) -> bool {
    let d1 = cross2(a1 - a0, b0 - a0);
    let d2 = cross2(a1 - a0, b1 - a0);
    let d3 = cross2(b1 - b0, a0 - b0);
    let d4 = cross2(b1 - b0, a1 - b0);
    ((d1 > 0.0) != (d2 > 0.0)) && ((d3 > 0.0) != (d4 > 0.0))
}

/// True if the polygon has no properly crossing pair of non-adjacent edges.
pub fn is_simple(poly: &[Vec2]) -> bool {
    let n = poly.len();
    if n < 3 {
        return false;
    }
    for i in 0..n {
        let (a0, a1) = (poly[i], poly[(i + 1) % n]);
        for j in i + 1..n {
            // Skip adjacent edges (they share an endpoint).
            if j == i || (j + 1) % n == i || (i + 1) % n == j {
                continue;
            }
            let (b0, b1) = (poly[j], poly[(j + 1) % n]);
            if segments_cross(a0, a1, b0, b1) {
                return false;
            }
        }
    }
    true
}

/// First hit of the ray `origin + t dir` (t > 0) against the polygon
/// boundary: returns `(edge index, t)` for the smallest positive t.
pub fn cast_ray(poly: &[Vec2], origin: Vec2, dir: Vec2) -> Option<(usize, f64)> {
    let n = poly.len();
    let mut best: Option<(usize, f64)> = None;
    for i in 0..n {
        let a = poly[i];
        let e = poly[(i + 1) % n] - a;
        let denom = cross2(dir, e);
        if denom.abs() < 1e-14 {
            continue; // parallel to the edge
        }
        let ao = a - origin;
        let t = cross2(ao, e) / denom;
        let s = cross2(ao, dir) / denom;
        if t > 1e-9 && (-1e-9..=1.0 + 1e-9).contains(&s) {
            match best {
                Some((_, tb)) if tb <= t => {}
                _ => best = Some((i, t)),
            }
        }
    }
    best
}

/// Ear-clipping triangulation of a simple polygon (either orientation).
/// Returns vertex index triples.
pub fn triangulate(poly: &[Vec2]) -> Vec<[usize; 3]> {
    let n = poly.len();
    let mut idx: Vec<usize> = (0..n).collect();
    if !is_ccw(poly) {
        idx.reverse();
    }
    let mut tris = Vec::with_capacity(n.saturating_sub(2));
    let eps = 1e-12 * max_extent(poly).powi(2);
    while idx.len() > 3 {
        let m = idx.len();
        let mut clipped = false;
        for k in 0..m {
            let (ia, ib, ic) = (idx[(k + m - 1) % m], idx[k], idx[(k + 1) % m]);
            let (a, b, c) = (poly[ia], poly[ib], poly[ic]);
            if cross2(b - a, c - b) <= eps {
                continue; // reflex or degenerate corner
            }
            let mut ear = true;
            for &other in &idx {
                if other == ia || other == ib || other == ic {
                    continue;
                }
                if point_in_triangle(poly[other], a, b, c) {
                    ear = false;
                    break;
                }
            }
            if ear {
                tris.push([ia, ib, ic]);
                idx.remove(k);
                clipped = true;
                break;
            }
        }
        if !clipped {
            // Numerically stuck (collinear runs); drop the flattest corner.
            let k = flattest_corner(poly, &idx);
            idx.remove(k);
        }
    }
    if idx.len() == 3 {
        tris.push([idx[0], idx[1], idx[2]]);
    }
    tris
}

fn max_extent(poly: &[Vec2]) -> f64 {
    let mut ext = 0.0f64;
    for p in poly {
        ext = ext.max(p.x.abs()).max(p.y.abs());
    }
    ext.max(1.0)
}

fn flattest_corner(poly: &[Vec2], idx: &[usize]) -> usize {
    let m = idx.len();
    let mut best = (f64::INFINITY, 0);
    for k in 0..m {
        let (a, b, c) = (poly[idx[(k + m - 1) % m]], poly[idx[k]], poly[idx[(k + 1) % m]]);
        let bend = cross2(b - a, c - b).abs();
        if bend < best.0 {
            best = (bend, k);
        }
    }
    best.1
}

fn point_in_triangle(p: Vec2, a: Vec2, b: Vec2, c: Vec2) -> bool {
    let d1 = cross2(b - a, p - a);
    let d2 = cross2(c - b, p - b);
    let d3 = cross2(a - c, p - c);
    let has_neg = d1 < 0.0 || d2 < 0.0 || d3 < 0.0;
    let has_pos = d1 > 0.0 || d2 > 0.0 || d3 > 0.0;
    !(has_neg && has_pos)
}

/// Clips a convex subject polygon against a convex clipper
/// (Sutherland-Hodgman); both counter-clockwise.
fn clip_convex(subject: &[Vec2], clipper: &[Vec2]) -> Vec<Vec2> {
    let mut output: Vec<Vec2> = subject.to_vec();
    let n = clipper.len();
    for i in 0..n {
        if output.is_empty() {
            break;
        }
        let a = clipper[i];
        let b = clipper[(i + 1) % n];
        let input = std::mem::take(&mut output);
        let m = input.len();
        for j in 0..m {
            let cur = input[j];
            let next = input[(j + 1) % m];
            let cur_in = cross2(b - a, cur - a) >= 0.0;
            let next_in = cross2(b - a, next - a) >= 0.0;
            if cur_in {
                output.push(cur);
            }
            if cur_in != next_in {
                let denom = cross2(b - a, next - cur);
                if denom.abs() > 0.0 {
                    let t = cross2(b - a, a - cur) / denom;
                    output.push(cur + t * (next - cur));
                }
            }
        }
    }
    output
}

/// Area of the boolean intersection of two simple polygons (convex or not),
/// via triangulation of both and pairwise convex clipping.
pub fn intersection_area(p: &[Vec2], q: &[Vec2]) -> f64 {
    if p.len() < 3 || q.len() < 3 {
        return 0.0;
    }
    let tp = triangulate(p);
    let tq = triangulate(q);
    let tri = |poly: &[Vec2], t: &[usize; 3]| -> [Vec2; 3] { [poly[t[0]], poly[t[1]], poly[t[2]]] };
    let mut area = 0.0;
    for a in &tp {
        let ta = tri(p, a);
        if signed_area(&ta) <= 0.0 {
            continue;
        }
        for b in &tq {
            let tb = tri(q, b);
            if signed_area(&tb) <= 0.0 {
                continue;
            }
            let clipped = clip_convex(&ta, &tb);
            if clipped.len() >= 3 {
                area += signed_area(&clipped).abs();
            }
        }
    }
    area
}
