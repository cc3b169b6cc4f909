//! Grouping wall directions into two perpendicular classes.

use nalgebra::Vector2;

use crate::error::SolveError;

/// Which of the two perpendicular direction classes a wall belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ManhattanClass {
    /// Aligned with the dominant direction.
    Primary,
    /// Perpendicular to the dominant direction.
    Orthogonal,
}

/// Result of grouping estimated wall directions.
#[derive(Debug, Clone)]
pub struct DirectionClasses {
    /// Dominant direction angle, in `(-pi/4, pi/4]`.
    pub main_angle: f64,
    pub classes: Vec<ManhattanClass>,
    /// Walls whose direction falls close to the 45-degree boundary between
    /// the classes; their assignment is unreliable.
    pub ambiguous: Vec<bool>,
}

/// Groups wall directions into two perpendicular classes.
///
/// Wall directions are lines, not arrows, so angles matter modulo half a
/// turn, and the two classes differ by a quarter turn: everything happens
/// modulo 90 degrees. Multiplying the angles by four maps that period onto
/// the full circle, where an ordinary circular mean yields the dominant
/// angle. `ambiguity_margin` (radians) flags walls near the class boundary.
pub fn classify_directions(
    directions: &[Vector2<f64>],
    ambiguity_margin: f64,
) -> Result<DirectionClasses, SolveError> {
    if directions.is_empty() {
        return Err(SolveError::InsufficientRays { needed: 1, got: 0 });
    }
    let mut sin_sum = 0.0;
    let mut cos_sum = 0.0;
    let angles: Vec<f64> = directions
        .iter()
        .map(|d| {
            let theta = d.y.atan2(d.x);
            sin_sum += (4.0 * theta).sin();
            cos_sum += (4.0 * theta).cos();
            theta
        })
        .collect();
    if sin_sum.hypot(cos_sum) < 1e-9 * directions.len() as f64 {
        return Err(SolveError::DegenerateConfiguration {
            reason: "wall directions cancel out; no dominant perpendicular pair exists".into(),
        });
    }
    let main_angle = sin_sum.atan2(cos_sum) / 4.0;

    let quarter = std::f64::consts::FRAC_PI_4;
    let half = std::f64::consts::PI;
    let mut classes = Vec::with_capacity(angles.len());
    let mut ambiguous = Vec::with_capacity(angles.len());
    for theta in angles {
        let alpha = (theta - main_angle).rem_euclid(half);
        let dist_primary = alpha.min(half - alpha);
        classes.push(if dist_primary < quarter {
            ManhattanClass::Primary
        } else {
            ManhattanClass::Orthogonal
        });
        ambiguous.push((dist_primary - quarter).abs() <= ambiguity_margin);
    }
    Ok(DirectionClasses { main_angle, classes, ambiguous })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn at(degrees: f64) -> Vector2<f64> {
        let r = degrees.to_radians();
        Vector2::new(r.cos(), r.sin())
    }

    #[test]
    fn averages_within_the_quarter_turn_period() {
        let dirs = [at(29.0), at(31.0), at(121.0)];
        let grouped = classify_directions(&dirs, 5.0_f64.to_radians()).unwrap();
        // 121 degrees is the same line class as 31: the mean angle must sit
        // between 29 and 31 weighted 1:2, not drift toward 60.
        assert_relative_eq!(grouped.main_angle.to_degrees(), 30.333815487305753, epsilon = 1e-9);
        assert_eq!(
            grouped.classes,
            vec![ManhattanClass::Primary, ManhattanClass::Primary, ManhattanClass::Orthogonal]
        );
        assert_eq!(grouped.ambiguous, vec![false, false, false]);
    }

    #[test]
    fn opposite_vectors_share_a_class() {
        let dirs = [at(10.0), at(190.0), at(100.0), at(-80.0)];
        let grouped = classify_directions(&dirs, 0.05).unwrap();
        assert_relative_eq!(grouped.main_angle.to_degrees(), 10.0, epsilon = 1e-9);
        assert_eq!(grouped.classes[0], grouped.classes[1]);
        assert_eq!(grouped.classes[2], grouped.classes[3]);
        assert_ne!(grouped.classes[0], grouped.classes[2]);
    }

    #[test]
    fn flags_directions_near_the_boundary() {
        let dirs = [at(0.0), at(90.0), at(44.2)];
        let grouped = classify_directions(&dirs, 5.0_f64.to_radians()).unwrap();
        assert_eq!(grouped.ambiguous, vec![false, false, true]);
    }

    #[test]
    fn rejects_cancelling_directions() {
        // Two lines exactly 45 degrees apart carry no majority vote.
        let dirs = [at(0.0), at(45.0)];
        let err = classify_directions(&dirs, 0.05).unwrap_err();
        assert!(matches!(err, SolveError::DegenerateConfiguration { .. }));
    }

    #[test]
    fn rejects_empty_input() {
        let err = classify_directions(&[], 0.05).unwrap_err();
        assert!(matches!(err, SolveError::InsufficientRays { .. }));
    }
}
