//! Observation noise model: Gaussian elevation jitter calibrated in pixels,
//! plus an optional softening of the hard corner indicator.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::SceneError;
use crate::scene::BoundaryObservation;

use std::f64::consts::PI;

/// Smallest elevation magnitude kept after clamping, radians.
const CLAMP_MARGIN: f64 = 1e-4;

/// Noise model parameters. `sigma_px` is the boundary jitter expressed in
/// image rows; it is converted to radians through the row-to-elevation scale
/// `pi / height` of the rig. When `blur_corners` is set, the 0/1 corner
/// indicator is convolved with a triangular kernel two columns wide on each
/// side, emulating a soft detector response.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseParams {
    pub sigma_px: f64,
    pub seed: u64,
    pub blur_corners: bool,
}

impl NoiseParams {
    pub fn new(sigma_px: f64, seed: u64) -> Self {
        Self { sigma_px, seed, blur_corners: false }
    }
}

/// Adds independent Gaussian noise to every boundary elevation, clamping so
/// each column keeps `theta_ceiling > 0 > theta_floor`. Deterministic in the
/// seed; `sigma_px = 0` returns the input unchanged.
pub fn add_noise(obs: &BoundaryObservation, params: &NoiseParams) -> Result<BoundaryObservation, SceneError> {
    if !params.sigma_px.is_finite() || params.sigma_px < 0.0 {
        return Err(SceneError::InvalidSigma { sigma: params.sigma_px });
    }
    let mut out = obs.clone();
    if params.blur_corners {
        out.corner_prob = blur_triangular(&obs.corner_prob);
    }
    if params.sigma_px == 0.0 {
        return Ok(out);
    }
    let sigma_rad = params.sigma_px * PI / obs.rig.height() as f64;
    let normal = Normal::new(0.0, sigma_rad).expect("sigma validated above");
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    for theta in &mut out.theta_ceiling {
        *theta = (*theta + normal.sample(&mut rng)).max(CLAMP_MARGIN);
    }
    for theta in &mut out.theta_floor {
        *theta = (*theta + normal.sample(&mut rng)).min(-CLAMP_MARGIN);
    }
    Ok(out)
}

/// Circular convolution with the triangular kernel [0.5, 1.0, 0.5] clipped
/// back to [0, 1]; spikes keep their peak and gain one-column shoulders.
fn blur_triangular(prob: &[f64]) -> Vec<f64> {
    let n = prob.len();
    (0..n)
        .map(|i| {
            let v = prob[i] + 0.5 * (prob[(i + n - 1) % n] + prob[(i + 1) % n]);
            v.min(1.0)
        })
        .collect()
}
