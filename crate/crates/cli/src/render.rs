//! `render`: observe a layout through the circular rig, optionally with
//! boundary noise.

use std::path::PathBuf;

use clap::Args;
use serde::Serialize;

use nclayout::io::ObservationFile;
use nclayout::scene::{add_noise, render_boundaries};
use nclayout::{CameraRig, NoiseParams};

use crate::errors::AppError;
use crate::files::{read_layout, write_json_with_config};

#[derive(Debug, Args, Serialize)]
pub struct RenderArgs {
    /// Layout file to observe.
    pub layout: PathBuf,
    /// Radius of the circle of optical centers, meters.
    #[arg(long, default_value_t = 0.5)]
    pub radius: f64,
    /// Panorama width in pixels.
    #[arg(long, default_value_t = 1024)]
    pub width: usize,
    /// Panorama height in pixels.
    #[arg(long, default_value_t = 512)]
    pub height: usize,
    /// Boundary jitter standard deviation in pixels; 0 renders exactly.
    #[arg(long, default_value_t = 0.0)]
    pub noise_sigma: f64,
    /// Seed of the noise stream.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output observation file.
    #[arg(long)]
    pub out: PathBuf,
}

pub fn run(args: &RenderArgs) -> Result<(), AppError> {
    println!("config: {}", serde_json::to_string(args)?);
    let layout = read_layout(&args.layout)?;
    let rig = CameraRig::new(args.radius, args.width, args.height)?;
    let exact = render_boundaries(&layout, &rig)?;
    let observation = add_noise(&exact, &NoiseParams::new(args.noise_sigma, args.seed))?;
    write_json_with_config(&args.out, &ObservationFile::from(&observation), args)?;
    println!("wrote {}", args.out.display());
    Ok(())
}
