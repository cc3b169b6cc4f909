//! File reading and writing: JSON payloads with an embedded producing
//! config, the dataset manifest, and CSV formatting helpers.

use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use nclayout::io::{LayoutFile, ObservationFile};
use nclayout::{BoundaryObservation, DatasetSpec, Layout};

use crate::errors::AppError;

/// Serializes `payload` with a `config` field recording the producing
/// command, and writes it pretty-printed with a trailing newline.
pub fn write_json_with_config<T: Serialize, C: Serialize>(
    path: &Path,
    payload: &T,
    config: &C,
) -> Result<(), AppError> {
    let mut value = serde_json::to_value(payload)?;
    let config = serde_json::to_value(config)?;
    match value.as_object_mut() {
        Some(object) => {
            object.insert("config".into(), config);
        }
        None => {
            return Err(AppError::Internal("top-level JSON payload must be an object".into()));
        }
    }
    write_text(path, &format!("{}\n", serde_json::to_string_pretty(&value)?))
}

pub fn write_text(path: &Path, text: &str) -> Result<(), AppError> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)?;
        }
    }
    fs::write(path, text)?;
    Ok(())
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, AppError> {
    let text = fs::read_to_string(path)
        .map_err(|e| AppError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| AppError::Parse(format!("{}: {e}", path.display())))
}

/// Reads and validates a layout file; validation failures count as parse
/// errors because the file, not the geometry pipeline, is at fault.
pub fn read_layout(path: &Path) -> Result<Layout, AppError> {
    let file: LayoutFile = read_json(path)?;
    Layout::try_from(file).map_err(|e| AppError::Parse(format!("{}: {e}", path.display())))
}

/// Reads and validates an observation file (see [`read_layout`] on error
/// classification).
pub fn read_observation(path: &Path) -> Result<BoundaryObservation, AppError> {
    let file: ObservationFile = read_json(path)?;
    BoundaryObservation::try_from(file)
        .map_err(|e| AppError::Parse(format!("{}: {e}", path.display())))
}

/// One generated scene in a dataset manifest.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub index: usize,
    /// Layout file path, relative to the manifest's directory.
    pub file: String,
    pub walls: usize,
}

/// Index of a generated dataset: the generation spec (which seeds every
/// layout) plus the layout files it produced.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Manifest {
    pub config: DatasetSpec,
    pub layouts: Vec<ManifestEntry>,
}

impl Manifest {
    pub fn read(path: &Path) -> Result<Self, AppError> {
        read_json(path)
    }

    /// Absolute path of an entry's layout file.
    pub fn resolve(&self, manifest_path: &Path, entry: &ManifestEntry) -> PathBuf {
        manifest_path
            .parent()
            .unwrap_or_else(|| Path::new(""))
            .join(&entry.file)
    }
}

/// Shortest-round-trip decimal formatting for CSV cells; never scientific
/// for typical magnitudes, always parses back to the same `f64`.
pub fn csv_float(x: f64) -> String {
    format!("{x:?}")
}

/// Formats an optional metric cell; absent values become empty cells.
pub fn csv_opt(x: Option<f64>) -> String {
    x.map(csv_float).unwrap_or_default()
}
