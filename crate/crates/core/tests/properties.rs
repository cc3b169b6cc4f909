//! Cross-module invariants checked on randomized inputs: algebraic
//! properties of the side product, homogeneity and similarity equivariance
//! of the solvers, occlusion correctness against a brute-force oracle, and
//! determinism of generation and noise.

use nalgebra::{Matrix2, Rotation2, Rotation3, Vector2, Vector3};
use proptest::prelude::*;
use rand::{Rng as _, SeedableRng as _};
use rand_chacha::ChaCha8Rng;

use nclayout::geom2d::Vec2;
use nclayout::geometry::{side, PluckerLine, ProjectingRay, Wall, WallFrame};
use nclayout::geometry::CameraRig;
use nclayout::metrics::iou3d_up_to_scale;
use nclayout::scene::{
    add_noise, generate_layout, render_boundaries, segment_columns, visible_wall,
    visible_wall_labels, DatasetSpec, Layout, NoiseParams, SegmentParams, WorldMode,
};
use nclayout::solvers::{reconstruct_layout, solve_wall, SolveOptions};

/// L-shaped six-wall room enclosing the origin with ample camera clearance.
fn l_room() -> Layout {
    Layout::new(
        vec![
            Vec2::new(2.2, -1.8),
            Vec2::new(2.2, 1.1),
            Vec2::new(0.9, 1.1),
            Vec2::new(0.9, 2.3),
            Vec2::new(-1.7, 2.3),
            Vec2::new(-1.7, -1.8),
        ],
        1.4,
        -1.6,
    )
    .unwrap()
}

/// The layout scaled by `s` and rotated by `alpha` about the camera axis.
fn transformed(layout: &Layout, s: f64, alpha: f64) -> Layout {
    let rot = Rotation2::new(alpha);
    Layout::new(
        layout.vertices().iter().map(|v| rot * (s * v)).collect(),
        s * layout.h_c(),
        s * layout.h_f(),
    )
    .unwrap()
}

/// True wall of a layout edge, oriented so the camera axis sees `d > 0`.
fn edge_wall(layout: &Layout, i: usize) -> Wall {
    let (a, b) = layout.wall_segment(i);
    let frame = WallFrame::from_direction((a - b).normalize()).unwrap();
    Wall { frame, d: frame.normal2().dot(&a), h_c: layout.h_c(), h_f: layout.h_f() }
}

/// Exact boundary rays of `wall` from a circle of radius `radius`, aimed at
/// boundary points spread along the wall.
fn exact_rays(wall: &Wall, radius: f64, offsets: &[(f64, f64)], h: f64) -> Vec<ProjectingRay> {
    let frame = &wall.frame;
    offsets
        .iter()
        .map(|&(phi_off, along)| {
            let n = frame.normal2();
            let phi = n.y.atan2(n.x) + phi_off;
            let origin = Vector3::new(radius * phi.cos(), radius * phi.sin(), 0.0);
            let point = wall.d * frame.e2() + h * frame.e3() + along * frame.e1();
            ProjectingRay::new(origin, point - origin)
        })
        .collect()
}

proptest! {
    /// The side product is unchanged when ray and line are rotated together
    /// about the vertical axis.
    #[test]
    fn side_invariant_under_joint_rotation(
        origin in prop::array::uniform3(-2.0..2.0f64),
        dir in prop::array::uniform3(-1.0..1.0f64),
        point in prop::array::uniform3(-3.0..3.0f64),
        line_dir in prop::array::uniform3(-1.0..1.0f64),
        alpha in 0.0..std::f64::consts::TAU,
    ) {
        let dir = Vector3::from(dir);
        let line_dir = Vector3::from(line_dir);
        prop_assume!(dir.norm() > 1e-3 && line_dir.norm() > 1e-3);
        let ray = ProjectingRay::new(Vector3::from(origin), dir);
        let line = PluckerLine::through_point(Vector3::from(point), line_dir);
        let rot = Rotation3::from_axis_angle(&Vector3::z_axis(), alpha);
        let ray2 = ProjectingRay::new(rot * ray.origin, rot * ray.direction);
        let line2 = PluckerLine::through_point(rot * Vector3::from(point), rot * line_dir);
        let before = side(&ray, &line);
        let after = side(&ray2, &line2);
        prop_assert!((before - after).abs() <= 1e-12 * (1.0 + before.abs()),
            "side changed from {before} to {after}");
    }

    /// Scaling any input ray's Plücker vector by a nonzero scalar leaves the
    /// recovered wall unchanged: every constraint row is homogeneous per ray.
    #[test]
    fn wall_solver_ignores_per_ray_scale(
        angle in 0.0..std::f64::consts::TAU,
        d in 1.5..4.0f64,
        h_c in 1.0..2.0f64,
        h_f in -2.0..-1.0f64,
        raw_scales in prop::collection::vec(0.1..3.0f64, 12),
        signs in prop::collection::vec(prop::bool::ANY, 12),
    ) {
        let frame = WallFrame::from_direction(Vector2::new(angle.cos(), angle.sin())).unwrap();
        let wall = Wall { frame, d, h_c, h_f };
        let ceiling_offsets: Vec<(f64, f64)> = (0..6)
            .map(|i| (-0.5 + 0.17 * i as f64, -1.0 + 0.43 * i as f64))
            .collect();
        let floor_offsets: Vec<(f64, f64)> = (0..6)
            .map(|i| (-0.45 + 0.19 * i as f64, 1.1 - 0.41 * i as f64))
            .collect();
        let ceiling = exact_rays(&wall, 0.5, &ceiling_offsets, h_c);
        let floor = exact_rays(&wall, 0.5, &floor_offsets, h_f);

        let rescale = |rays: &[ProjectingRay], scales: &[(f64, bool)]| -> Vec<ProjectingRay> {
            rays.iter()
                .zip(scales)
                .map(|(r, &(s, neg))| {
                    let s = if neg { -s } else { s };
                    ProjectingRay::new(r.origin, s * r.direction)
                })
                .collect()
        };
        let scales: Vec<(f64, bool)> =
            raw_scales.iter().copied().zip(signs.iter().copied()).collect();
        let base = solve_wall(&ceiling, &floor).unwrap();
        let scaled = solve_wall(
            &rescale(&ceiling, &scales[..6]),
            &rescale(&floor, &scales[6..]),
        )
        .unwrap();
        prop_assert!((base.wall.d - scaled.wall.d).abs() < 1e-9);
        prop_assert!((base.wall.h_c - scaled.wall.h_c).abs() < 1e-9);
        prop_assert!((base.wall.h_f - scaled.wall.h_f).abs() < 1e-9);
        prop_assert!(
            base.wall.frame.direction2().dot(&scaled.wall.frame.direction2()) > 1.0 - 1e-12
        );
    }

    /// Scaling a prediction away from the truth is undone by the up-to-scale
    /// IoU search across the whole search bracket.
    #[test]
    fn up_to_scale_iou_recovers_pure_scaling(s in 0.2..4.5f64) {
        let truth = l_room();
        let prediction = transformed(&truth, s, 0.0);
        let (iou, scale) = iou3d_up_to_scale(&prediction, &truth).unwrap();
        prop_assert!(iou >= 1.0 - 2e-3, "up-to-scale IoU {iou} for s={s}");
        prop_assert!((scale * s - 1.0).abs() < 2e-3, "scale {scale} for s={s}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    /// Full-pipeline similarity equivariance: scaling the scene and the
    /// camera radius by `s` scales every recovered length by `s`, and
    /// rotating the scene rotates the recovery, in both direction regimes.
    #[test]
    fn pipeline_is_similarity_equivariant(
        s in 0.4..3.0f64,
        alpha in 0.0..std::f64::consts::TAU,
        manhattan in prop::bool::ANY,
    ) {
        let mode = if manhattan { WorldMode::Manhattan } else { WorldMode::Atlanta };
        let base = l_room();
        let moved = transformed(&base, s, alpha);

        let rig_base = CameraRig::new(0.5, 1024, 512).unwrap();
        let rig_moved = CameraRig::new(0.5 * s, 1024, 512).unwrap();
        let options = SolveOptions::new(mode);
        let sol_base =
            reconstruct_layout(&render_boundaries(&base, &rig_base).unwrap(), &options).unwrap();
        let sol_moved =
            reconstruct_layout(&render_boundaries(&moved, &rig_moved).unwrap(), &options).unwrap();

        let tol = 1e-8 * s.max(1.0);
        prop_assert!((sol_moved.layout.h_c() - s * sol_base.layout.h_c()).abs() < tol);
        prop_assert!((sol_moved.layout.h_f() - s * sol_base.layout.h_f()).abs() < tol);

        // Corner polygons match up to the cyclic shift introduced by the
        // rotation moving the segmentation's starting corner.
        let rot = Rotation2::new(alpha);
        let expect: Vec<Vec2> = sol_base.layout.vertices().iter().map(|v| rot * (s * v)).collect();
        let got = sol_moved.layout.vertices();
        prop_assert_eq!(got.len(), expect.len());
        let n = expect.len();
        let best = (0..n)
            .map(|shift| {
                (0..n)
                    .map(|i| (got[(i + shift) % n] - expect[i]).norm())
                    .fold(0.0, f64::max)
            })
            .fold(f64::INFINITY, f64::min);
        prop_assert!(best < tol, "vertex mismatch {best:.3e} at s={s}, alpha={alpha}");
    }
}

/// The production visibility query agrees with a brute-force parametric
/// segment intersector on ten thousand random interior origins and azimuths.
#[test]
fn visibility_matches_brute_force_oracle() {
    let layout = l_room();
    let verts = layout.vertices();
    let mut rng = ChaCha8Rng::seed_from_u64(0xFACADE);
    let mut checked = 0;
    while checked < 10_000 {
        let origin = Vec2::new(rng.gen_range(-0.6..0.6), rng.gen_range(-0.6..0.6));
        let azimuth = rng.gen_range(0.0..std::f64::consts::TAU);
        let dir = Vec2::new(azimuth.cos(), azimuth.sin());

        // Brute force: intersect the ray with every edge as an explicit 2x2
        // linear system and keep the closest forward hit.
        let mut best: Option<(usize, f64)> = None;
        for i in 0..verts.len() {
            let a = verts[i];
            let e = verts[(i + 1) % verts.len()] - a;
            let m = Matrix2::from_columns(&[dir, -e]);
            let Some(inv) = m.try_inverse() else { continue };
            let tu = inv * (a - origin);
            let (t, u) = (tu.x, tu.y);
            if t > 1e-9 && (0.0..1.0).contains(&u) && best.is_none_or(|(_, bt)| t < bt) {
                best = Some((i, t));
            }
        }
        let (oracle_wall, oracle_t) = best.expect("interior origin always sees a wall");

        let (wall, t) = visible_wall(&layout, origin, azimuth).unwrap();
        assert_eq!(wall, oracle_wall, "origin {origin:?}, azimuth {azimuth}");
        assert!((t - oracle_t).abs() <= 1e-10 * (1.0 + oracle_t));
        checked += 1;
    }
}

/// Every rendered column's back-projected boundary rays meet the visible
/// wall's true boundary lines.
#[test]
fn rendered_boundaries_lie_on_true_wall_lines() {
    for (mode, seed) in [(WorldMode::Manhattan, 21), (WorldMode::Atlanta, 22)] {
        let spec = DatasetSpec::new(mode, 3, 6, 8, seed);
        for index in 0..3 {
            let layout = generate_layout(&spec, index).unwrap();
            let rig = CameraRig::new(0.5, 512, 256).unwrap();
            let obs = render_boundaries(&layout, &rig).unwrap();
            let labels = visible_wall_labels(&layout, &rig).unwrap();
            for (col, &label) in labels.iter().enumerate() {
                let wall = edge_wall(&layout, label);
                let ray_c = rig.ray_from_elevation(col, obs.theta_ceiling[col]).unwrap();
                let ray_f = rig.ray_from_elevation(col, obs.theta_floor[col]).unwrap();
                assert!(side(&ray_c, &wall.ceiling_line()).abs() <= 1e-10);
                assert!(side(&ray_f, &wall.floor_line()).abs() <= 1e-10);
            }
        }
    }
}

/// Star-visible generated rooms produce exactly one segment per wall under
/// noise-free segmentation.
#[test]
fn segmentation_finds_one_segment_per_wall() {
    for (mode, seed) in [(WorldMode::Manhattan, 5), (WorldMode::Atlanta, 6)] {
        let spec = DatasetSpec::new(mode, 4, 4, 9, seed);
        for index in 0..4 {
            let layout = generate_layout(&spec, index).unwrap();
            let rig = CameraRig::new(0.5, 1024, 512).unwrap();
            let obs = render_boundaries(&layout, &rig).unwrap();
            let segments = segment_columns(&obs, &SegmentParams::default()).unwrap();
            assert_eq!(segments.len(), layout.wall_count(), "mode {mode}, scene {index}");
        }
    }
}

/// Generation and noise are pure functions of their seeds.
#[test]
fn generation_and_noise_are_deterministic() {
    let spec = DatasetSpec::new(WorldMode::Atlanta, 2, 5, 9, 99);
    let a = generate_layout(&spec, 1).unwrap();
    let b = generate_layout(&spec, 1).unwrap();
    assert_eq!(a.vertices(), b.vertices());
    assert_eq!(a.h_c(), b.h_c());
    assert_eq!(a.h_f(), b.h_f());

    let rig = CameraRig::new(0.5, 512, 256).unwrap();
    let obs = render_boundaries(&a, &rig).unwrap();
    let params = NoiseParams::new(0.7, 1234);
    let n1 = add_noise(&obs, &params).unwrap();
    let n2 = add_noise(&obs, &params).unwrap();
    assert_eq!(n1.theta_ceiling, n2.theta_ceiling);
    assert_eq!(n1.theta_floor, n2.theta_floor);
    assert_eq!(n1.corner_prob, n2.corner_prob);

    let other = add_noise(&obs, &NoiseParams::new(0.7, 1235)).unwrap();
    assert_ne!(n1.theta_ceiling, other.theta_ceiling);
}
