//! `bench`: render, corrupt, reconstruct and score a whole dataset over a
//! grid of noise levels.
//!
//! Scenes run in parallel but each one is a pure function of (manifest,
//! flags), so the CSV is reproducible byte for byte. Per-scene failures
//! become rows with the failure reason; they never abort the batch.

use std::path::PathBuf;

use clap::Args;
use rayon::prelude::*;
use serde::Serialize;

use nclayout::scene::{add_noise, render_boundaries};
use nclayout::{
    evaluate, reconstruct_layout, CameraRig, EvaluationReport, Layout, NoiseParams, SolveOptions,
    WorldMode,
};

use crate::args::parse_mode;
use crate::errors::AppError;
use crate::evaluate::CSV_HEADER;
use crate::files::{csv_float, csv_opt, read_layout, write_text, Manifest};

#[derive(Debug, Args, Serialize)]
pub struct BenchArgs {
    /// Dataset manifest produced by `generate`.
    pub manifest: PathBuf,
    /// Radius of the circle of optical centers, meters.
    #[arg(long, default_value_t = 0.5)]
    pub radius: f64,
    /// Panorama width in pixels.
    #[arg(long, default_value_t = 1024)]
    pub width: usize,
    /// Panorama height in pixels.
    #[arg(long, default_value_t = 512)]
    pub height: usize,
    /// Noise grid: boundary jitter levels in pixels, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "0.0")]
    pub noise_sigma: Vec<f64>,
    /// Base seed of the per-scene noise streams.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Solver regime; defaults to the manifest's generation mode.
    #[arg(long, value_parser = parse_mode)]
    pub mode: Option<WorldMode>,
    /// Output CSV path.
    #[arg(long)]
    pub out: PathBuf,
}

/// Stable per-scene noise seed: a SplitMix64 step over the grid position,
/// independent of execution order.
fn noise_seed(base: u64, sigma_index: usize, scene_index: usize) -> u64 {
    let mut z = base
        .wrapping_add((sigma_index as u64) << 32)
        .wrapping_add(scene_index as u64)
        .wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Outcome of one scene at one noise level.
struct SceneResult {
    file: String,
    walls: usize,
    outcome: Result<EvaluationReport, String>,
}

fn run_scene(
    truth: &Layout,
    rig: &CameraRig,
    sigma: f64,
    seed: u64,
    options: &SolveOptions,
) -> Result<EvaluationReport, String> {
    let exact = render_boundaries(truth, rig).map_err(|e| format!("render: {e}"))?;
    let noisy = add_noise(&exact, &NoiseParams::new(sigma, seed)).map_err(|e| format!("noise: {e}"))?;
    let solution = reconstruct_layout(&noisy, options).map_err(|e| format!("solve: {e}"))?;
    evaluate(&solution.layout, truth).map_err(|e| format!("evaluate: {e}"))
}

/// Commas would break the single-cell status column.
fn sanitize_status(reason: &str) -> String {
    reason.replace(',', ";")
}

pub fn run(args: &BenchArgs) -> Result<(), AppError> {
    println!("config: {}", serde_json::to_string(args)?);
    let manifest = Manifest::read(&args.manifest)?;
    let mode = args.mode.unwrap_or(manifest.config.mode);
    let rig = CameraRig::new(args.radius, args.width, args.height)?;
    let options = SolveOptions::new(mode);
    for &sigma in &args.noise_sigma {
        if !(sigma.is_finite() && sigma >= 0.0) {
            return Err(AppError::Parse(format!("noise sigma must be >= 0, got {sigma}")));
        }
    }

    let truths: Vec<(String, Layout)> = manifest
        .layouts
        .iter()
        .map(|entry| {
            read_layout(&manifest.resolve(&args.manifest, entry))
                .map(|layout| (entry.file.clone(), layout))
        })
        .collect::<Result<_, _>>()?;

    let mut csv = String::new();
    csv.push_str(&format!("# config: {}\n", serde_json::to_string(args)?));
    csv.push_str(&format!("sigma_px,scene,file,mode,walls,status,{CSV_HEADER},solved\n"));

    for (sigma_index, &sigma) in args.noise_sigma.iter().enumerate() {
        let results: Vec<SceneResult> = truths
            .par_iter()
            .enumerate()
            .map(|(scene_index, (file, truth))| SceneResult {
                file: file.clone(),
                walls: truth.wall_count(),
                outcome: run_scene(
                    truth,
                    &rig,
                    sigma,
                    noise_seed(args.seed, sigma_index, scene_index),
                    &options,
                ),
            })
            .collect();

        for (scene_index, result) in results.iter().enumerate() {
            let sigma_cell = csv_float(sigma);
            match &result.outcome {
                Ok(report) => csv.push_str(&format!(
                    "{sigma_cell},{scene_index},{},{mode},{},ok,{},\n",
                    result.file,
                    result.walls,
                    crate::evaluate::csv_row(report),
                )),
                Err(reason) => csv.push_str(&format!(
                    "{sigma_cell},{scene_index},{},{mode},{},{},,,,,,\n",
                    result.file,
                    result.walls,
                    sanitize_status(reason),
                )),
            }
        }

        // Summary row: IoU means count failed scenes as zero overlap;
        // corner errors average only the scenes where they are defined.
        let solved: Vec<&EvaluationReport> =
            results.iter().filter_map(|r| r.outcome.as_ref().ok()).collect();
        let n = results.len().max(1);
        let iou_mean = solved.iter().map(|r| r.iou).fold(0.0, |a, b| a + b) / n as f64;
        let u2s_mean =
            solved.iter().map(|r| r.iou_up_to_scale).fold(0.0, |a, b| a + b) / n as f64;
        let mean_defined = |pick: fn(&EvaluationReport) -> Option<f64>| {
            let values: Vec<f64> = solved.iter().filter_map(|r| pick(r)).collect();
            if values.is_empty() {
                None
            } else {
                Some(values.iter().sum::<f64>() / values.len() as f64)
            }
        };
        csv.push_str(&format!(
            "{},,,{mode},,mean,{},{},{},{},,{}/{}\n",
            csv_float(sigma),
            csv_float(iou_mean),
            csv_float(u2s_mean),
            csv_opt(mean_defined(|r| r.corner_error)),
            csv_opt(mean_defined(|r| r.corner_error_normalized)),
            solved.len(),
            results.len(),
        ));
        println!(
            "sigma {}: solved {}/{}, mean iou3d {:.6}",
            csv_float(sigma),
            solved.len(),
            results.len(),
            iou_mean
        );
    }

    write_text(&args.out, &csv)?;
    println!("wrote {}", args.out.display());
    Ok(())
}
