//! `solve`: reconstruct a layout from an observation file.

use std::path::PathBuf;

use clap::Args;
use serde::Serialize;

use nclayout::io::LayoutFile;
use nclayout::{reconstruct_layout, SolveOptions, WorldMode};

use crate::args::parse_mode;
use crate::errors::AppError;
use crate::files::{read_observation, write_json_with_config, write_text};
use crate::plot::floor_plan_svg;

#[derive(Debug, Args, Serialize)]
pub struct SolveArgs {
    /// Observation file to reconstruct from.
    pub observation: PathBuf,
    /// Direction regime assumed by the joint solver.
    #[arg(long, value_parser = parse_mode)]
    pub mode: WorldMode,
    /// Output layout file (same schema as ground-truth layouts).
    #[arg(long)]
    pub out: PathBuf,
    /// Diagnostics JSON path; defaults to OUT with a `.diag.json` suffix.
    #[arg(long)]
    pub diagnostics: Option<PathBuf>,
    /// Also write an SVG floor plan of the reconstruction here.
    #[arg(long)]
    pub plot: Option<PathBuf>,
}

/// Solver health report written next to the reconstructed layout.
#[derive(Debug, Serialize)]
struct DiagnosticsFile {
    walls: usize,
    h_c: f64,
    h_f: f64,
    /// Perpendicular origin-to-wall distances, sweep order, meters.
    wall_distances: Vec<f64>,
    /// Column index where each wall's segment starts.
    corner_columns: Vec<usize>,
    max_side_residual: f64,
    max_lambda_mismatch: f64,
    wall_lambda: Vec<Option<f64>>,
    wall_rel_kernel_sigma: Vec<Option<f64>>,
    joint_rel_guard_sigma: f64,
    ambiguous_walls: usize,
    fallback_directions: usize,
    /// Root-mean-square angular residual (radians) of the nonlinear polish,
    /// absent when the polish was rejected.
    refine_rms: Option<f64>,
    main_direction: Option<f64>,
}

pub fn run(args: &SolveArgs) -> Result<(), AppError> {
    println!("config: {}", serde_json::to_string(args)?);
    let observation = read_observation(&args.observation)?;
    let solution = reconstruct_layout(&observation, &SolveOptions::new(args.mode))?;

    write_json_with_config(&args.out, &LayoutFile::from(&solution.layout), args)?;

    let diagnostics = DiagnosticsFile {
        walls: solution.walls.len(),
        h_c: solution.layout.h_c(),
        h_f: solution.layout.h_f(),
        wall_distances: solution.walls.iter().map(|w| w.d).collect(),
        corner_columns: solution.corner_columns.clone(),
        max_side_residual: solution.diagnostics.max_side_residual,
        max_lambda_mismatch: solution.diagnostics.max_lambda_mismatch,
        wall_lambda: solution.diagnostics.wall_lambda.clone(),
        wall_rel_kernel_sigma: solution.diagnostics.wall_rel_kernel_sigma.clone(),
        joint_rel_guard_sigma: solution.diagnostics.joint_rel_guard_sigma,
        ambiguous_walls: solution.diagnostics.ambiguous_walls,
        fallback_directions: solution.diagnostics.fallback_directions,
        refine_rms: solution.diagnostics.refine_rms,
        main_direction: solution.diagnostics.main_direction,
    };
    let diag_path = args
        .diagnostics
        .clone()
        .unwrap_or_else(|| args.out.with_extension("diag.json"));
    write_json_with_config(&diag_path, &diagnostics, args)?;

    if let Some(plot_path) = &args.plot {
        let note = serde_json::to_string(args)?;
        write_text(plot_path, &floor_plan_svg(&solution.layout, None, &note))?;
    }

    println!(
        "reconstructed {} walls, h_c={:.6} m, h_f={:.6} m, max residual {:.3e}",
        solution.walls.len(),
        solution.layout.h_c(),
        solution.layout.h_f(),
        solution.diagnostics.max_side_residual
    );
    println!("wrote {} and {}", args.out.display(), diag_path.display());
    Ok(())
}
