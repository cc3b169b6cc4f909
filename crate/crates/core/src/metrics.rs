//! Evaluation metrics for recovered layouts.
//!
//! Layouts are vertical prisms, so the 3-D volume overlap factors into a
//! plan-view polygon intersection times a height-interval overlap. Corner
//! error compares the two rings of 3-D corners (ceiling and floor) after
//! resolving the arbitrary cyclic shift a reconstruction carries.

use nalgebra::Vector3;

use crate::error::MetricsError;
use crate::geom2d;
use crate::scene::Layout;

/// Bracket of the scale search in [`iou3d_up_to_scale`].
const SCALE_RANGE: (f64, f64) = (0.1, 10.0);
/// Relative precision of the golden-section scale search.
const SCALE_TOL: f64 = 1e-4;

fn volume(layout: &Layout) -> f64 {
    layout.floor_area() * (layout.h_c() - layout.h_f())
}

fn check_volume(layout: &Layout, name: &str) -> Result<f64, MetricsError> {
    let v = volume(layout);
    if !(v.is_finite() && v > 0.0) {
        return Err(MetricsError::DegeneratePolygon {
            reason: format!("{name} layout has non-positive volume {v}"),
        });
    }
    Ok(v)
}

/// Volume intersection-over-union of two layouts in absolute scale.
pub fn iou3d(prediction: &Layout, truth: &Layout) -> Result<f64, MetricsError> {
    let vp = check_volume(prediction, "predicted")?;
    let vt = check_volume(truth, "ground-truth")?;
    let overlap_z = (prediction.h_c().min(truth.h_c()) - prediction.h_f().max(truth.h_f())).max(0.0);
    let overlap_area = geom2d::intersection_area(prediction.vertices(), truth.vertices());
    let inter = overlap_area * overlap_z;
    let union = vp + vt - inter;
    if union <= 0.0 {
        return Err(MetricsError::ZeroVolume);
    }
    Ok((inter / union).clamp(0.0, 1.0))
}

/// Volume IoU after scaling the prediction about the origin by the best
/// factor in `[0.1, 10]`; returns `(iou, scale)`.
///
/// The search is a golden-section maximization over `log s`, seeded against
/// `s = 1` so an already metrically correct prediction never scores worse
/// than [`iou3d`].
pub fn iou3d_up_to_scale(prediction: &Layout, truth: &Layout) -> Result<(f64, f64), MetricsError> {
    check_volume(prediction, "predicted")?;
    check_volume(truth, "ground-truth")?;
    let score = |log_s: f64| -> Result<f64, MetricsError> {
        iou3d(&prediction.scaled(log_s.exp()), truth)
    };
    let (mut lo, mut hi) = (SCALE_RANGE.0.ln(), SCALE_RANGE.1.ln());
    let inv_phi = (5.0_f64.sqrt() - 1.0) / 2.0;
    let mut c = hi - inv_phi * (hi - lo);
    let mut d = lo + inv_phi * (hi - lo);
    let mut fc = score(c)?;
    let mut fd = score(d)?;
    while hi - lo > SCALE_TOL {
        if fc >= fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = score(c)?;
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = score(d)?;
        }
    }
    let mid = 0.5 * (lo + hi);
    let candidates = [(score(mid)?, mid.exp()), (iou3d(prediction, truth)?, 1.0)];
    let best = candidates
        .into_iter()
        .max_by(|a, b| a.0.partial_cmp(&b.0).unwrap())
        .unwrap();
    Ok(best)
}

/// The `2N` 3-D corners of a layout: the ceiling ring then the floor ring,
/// both in vertex order starting at `shift`.
fn corners3d(layout: &Layout, shift: usize) -> impl Iterator<Item = Vector3<f64>> + '_ {
    let n = layout.vertices().len();
    let ring = move |h: f64| {
        (0..n).map(move |i| {
            let v = layout.vertices()[(i + shift) % n];
            Vector3::new(v.x, v.y, h)
        })
    };
    ring(layout.h_c()).chain(ring(layout.h_f()))
}

/// Mean Euclidean distance between corresponding 3-D corners, minimized
/// over the cyclic vertex shift of the prediction.
pub fn corner_error(prediction: &Layout, truth: &Layout) -> Result<f64, MetricsError> {
    let n = truth.vertices().len();
    if prediction.vertices().len() != n {
        return Err(MetricsError::CornerCountMismatch {
            pred: prediction.vertices().len(),
            gt: n,
        });
    }
    let mean_for_shift = |shift: usize| {
        corners3d(prediction, shift)
            .zip(corners3d(truth, 0))
            .map(|(p, t)| (p - t).norm())
            .sum::<f64>()
            / (2 * n) as f64
    };
    Ok((0..n).map(mean_for_shift).fold(f64::INFINITY, f64::min))
}

/// [`corner_error`] divided by the diagonal of the ground truth's 3-D
/// bounding box, making the value scale-free.
pub fn corner_error_normalized(prediction: &Layout, truth: &Layout) -> Result<f64, MetricsError> {
    let ce = corner_error(prediction, truth)?;
    let span = |f: fn(&crate::geom2d::Vec2) -> f64| {
        let (lo, hi) = truth
            .vertices()
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(f(v)), hi.max(f(v))));
        hi - lo
    };
    let dx = span(|v| v.x);
    let dy = span(|v| v.y);
    let dz = truth.h_c() - truth.h_f();
    let diagonal = (dx * dx + dy * dy + dz * dz).sqrt();
    if !(diagonal.is_finite() && diagonal > 0.0) {
        return Err(MetricsError::DegeneratePolygon {
            reason: format!("ground-truth bounding box diagonal is {diagonal}"),
        });
    }
    Ok(ce / diagonal)
}

/// All metrics of a prediction against its ground truth. Corner errors are
/// absent when the wall counts differ (the IoU still measures the overlap).
#[derive(Debug, Clone, PartialEq)]
pub struct EvaluationReport {
    pub iou: f64,
    pub iou_up_to_scale: f64,
    pub scale: f64,
    pub corner_error: Option<f64>,
    pub corner_error_normalized: Option<f64>,
}

pub fn evaluate(prediction: &Layout, truth: &Layout) -> Result<EvaluationReport, MetricsError> {
    let iou = iou3d(prediction, truth)?;
    let (iou_up_to_scale, scale) = iou3d_up_to_scale(prediction, truth)?;
    let (corner_error, corner_error_normalized) =
        if prediction.vertices().len() == truth.vertices().len() {
            (
                Some(self::corner_error(prediction, truth)?),
                Some(self::corner_error_normalized(prediction, truth)?),
            )
        } else {
            (None, None)
        };
    Ok(EvaluationReport { iou, iou_up_to_scale, scale, corner_error, corner_error_normalized })
}
