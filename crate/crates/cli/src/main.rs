//! Command-line front end for metrically scaled room layout recovery from
//! non-central circular panoramas.

mod args;
mod bench;
mod errors;
mod evaluate;
mod files;
mod generate;
mod plot;
mod render;
mod solve;

use clap::{Parser, Subcommand};

use errors::AppError;

const LONG_ABOUT: &str = "\
Recovers metrically scaled 3-D room layouts from per-column boundary \
observations of a non-central circular panorama.

Units are meters and radians everywhere; no file ever contains degrees.

CSV reports are UTF-8 with ',' separators, '.' decimals, a '# config: …' \
comment line and a header row. Evaluation columns: iou3d (volume \
intersection-over-union), iou3d_u2s (same, after the best uniform scaling \
of the prediction), ce (mean 3-D corner distance, meters), cen (ce divided \
by the ground-truth bounding-box diagonal), scale_star (the best scale \
factor). Bench rows add sigma_px, scene, file, mode, walls, status and a \
solved counter on summary rows.

Exit codes: 0 success, 1 internal error, 2 usage error, 3 input file parse \
or validation error, 4 geometry or scene error, 5 solver failure, 6 file \
system I/O error.";

#[derive(Debug, Parser)]
#[command(name = "nclayout", version, about, long_about = LONG_ABOUT)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a reproducible dataset of random layouts plus a manifest.
    Generate(generate::GenerateArgs),
    /// Observe a layout through the circular rig, optionally with noise.
    Render(render::RenderArgs),
    /// Reconstruct a layout from an observation file.
    Solve(solve::SolveArgs),
    /// Score predicted layouts against ground truth.
    Evaluate(evaluate::EvaluateArgs),
    /// Render, corrupt, reconstruct and score a dataset over a noise grid.
    Bench(bench::BenchArgs),
}

fn run(cli: &Cli) -> Result<(), AppError> {
    match &cli.command {
        Command::Generate(args) => generate::run(args),
        Command::Render(args) => render::run(args),
        Command::Solve(args) => solve::run(args),
        Command::Evaluate(args) => evaluate::run(args),
        Command::Bench(args) => bench::run(args),
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(error) = run(&cli) {
        eprintln!("{error}");
        std::process::exit(error.exit_code());
    }
}
