//! Splitting an observation into per-wall column ranges from the corner
//! likelihood channel.

use crate::error::SceneError;
use crate::scene::BoundaryObservation;

/// A contiguous run of columns attributed to one wall, wrapping around the
/// image seam when needed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColumnRange {
    pub start: usize,
    pub len: usize,
}

impl ColumnRange {
    /// Columns of the range in sweep order (modulo image width).
    pub fn columns(&self, width: usize) -> impl Iterator<Item = usize> + '_ {
        let start = self.start;
        (0..self.len).map(move |k| (start + k) % width)
    }
}

/// Segmentation knobs: minimum corner likelihood, and the minimum circular
/// distance between kept corners (closer candidates are suppressed, keeping
/// the stronger one).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SegmentParams {
    pub threshold: f64,
    pub min_separation: usize,
}

impl Default for SegmentParams {
    fn default() -> Self {
        Self { threshold: 0.5, min_separation: 8 }
    }
}

/// Detects corner columns (threshold + circular non-maximum suppression) and
/// returns one [`ColumnRange`] per wall, in column order starting at each
/// corner. Errors when fewer than 3 corners survive: a closed layout needs
/// at least 3 walls.
pub fn segment_columns(
    obs: &BoundaryObservation,
    params: &SegmentParams,
) -> Result<Vec<ColumnRange>, SceneError> {
    let w = obs.width();
    let mut candidates: Vec<usize> =
        (0..w).filter(|&i| obs.corner_prob[i] > params.threshold).collect();
    // Strongest first; ties resolved by column index for determinism.
    candidates.sort_by(|&a, &b| {
        obs.corner_prob[b]
            .partial_cmp(&obs.corner_prob[a])
            .unwrap()
            .then(a.cmp(&b))
    });
    let mut kept: Vec<usize> = Vec::new();
    for col in candidates {
        let far_enough = kept.iter().all(|&k| circular_distance(col, k, w) >= params.min_separation);
        if far_enough {
            kept.push(col);
        }
    }
    if kept.len() < 3 {
        return Err(SceneError::TooFewCorners { found: kept.len() });
    }
    kept.sort_unstable();
    let segments = kept
        .iter()
        .enumerate()
        .map(|(i, &start)| {
            let next = kept[(i + 1) % kept.len()];
            let len = (next + w - start) % w;
            ColumnRange { start, len }
        })
        .collect();
    Ok(segments)
}

fn circular_distance(a: usize, b: usize, w: usize) -> usize {
    let d = (a as isize - b as isize).unsigned_abs() % w;
    d.min(w - d)
}
