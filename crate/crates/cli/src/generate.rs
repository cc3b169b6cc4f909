//! `generate`: write a reproducible dataset of random layouts.

use std::path::PathBuf;

use clap::Args;
use serde::Serialize;

use nclayout::io::LayoutFile;
use nclayout::{scene::generate_layout, DatasetSpec, WorldMode};

use crate::args::{parse_f64_range, parse_mode, parse_usize_range};
use crate::errors::AppError;
use crate::files::{write_json_with_config, Manifest, ManifestEntry};

#[derive(Debug, Args, Serialize)]
pub struct GenerateArgs {
    /// Number of layouts to generate.
    #[arg(long)]
    pub n: usize,
    /// Wall count range MIN:MAX (inclusive).
    #[arg(long, value_parser = parse_usize_range)]
    pub walls: (usize, usize),
    /// Direction regime: manhattan (right-angled) or atlanta (general).
    #[arg(long, value_parser = parse_mode)]
    pub mode: WorldMode,
    /// Dataset seed; layout i depends only on (seed, i).
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// Output directory for layout files and the manifest.
    #[arg(long)]
    pub out: PathBuf,
    /// Ceiling height range MIN:MAX, meters above the camera plane.
    #[arg(long, value_parser = parse_f64_range, default_value = "1.2:1.9")]
    pub ceiling: (f64, f64),
    /// Floor height range MIN:MAX, meters (negative: below the camera plane).
    #[arg(long, value_parser = parse_f64_range, default_value = "-1.9:-1.2", allow_hyphen_values = true)]
    pub floor: (f64, f64),
    /// Wall offset range MIN:MAX, meters from the origin.
    #[arg(long, value_parser = parse_f64_range, default_value = "1.6:4.2")]
    pub size: (f64, f64),
    /// Minimum origin-to-wall clearance, meters.
    #[arg(long, default_value_t = 0.7)]
    pub clearance: f64,
}

impl GenerateArgs {
    fn spec(&self) -> DatasetSpec {
        let mut spec = DatasetSpec::new(self.mode, self.n, self.walls.0, self.walls.1, self.seed);
        spec.ceiling_range = self.ceiling;
        spec.floor_range = self.floor;
        spec.size_range = self.size;
        spec.clearance = self.clearance;
        spec
    }
}

pub fn run(args: &GenerateArgs) -> Result<(), AppError> {
    let spec = args.spec();
    spec.validate()?;
    println!("config: {}", serde_json::to_string(args)?);

    let mut entries = Vec::with_capacity(args.n);
    for index in 0..args.n {
        let layout = generate_layout(&spec, index as u64)?;
        let file = format!("layout_{index:04}.json");
        write_json_with_config(&args.out.join(&file), &LayoutFile::from(&layout), &spec)?;
        entries.push(ManifestEntry { index, file, walls: layout.wall_count() });
    }
    let manifest = Manifest { config: spec, layouts: entries };
    let manifest_path = args.out.join("manifest.json");
    crate::files::write_text(
        &manifest_path,
        &format!("{}\n", serde_json::to_string_pretty(&manifest)?),
    )?;
    println!("wrote {} layouts and {}", args.n, manifest_path.display());
    Ok(())
}
