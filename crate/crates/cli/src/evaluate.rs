//! `evaluate`: score predicted layouts against ground truth.
//!
//! Single mode compares two layout files; batch mode walks a dataset
//! manifest and a directory of same-named predictions, emitting one CSV row
//! per scene plus mean and median summary rows.

use std::path::{Path, PathBuf};

use clap::Args;
use serde::Serialize;

use nclayout::{evaluate, EvaluationReport};

use crate::errors::AppError;
use crate::files::{csv_opt, read_layout, write_text, Manifest};
use crate::plot::floor_plan_svg;

pub const CSV_HEADER: &str = "iou3d,iou3d_u2s,ce,cen,scale_star";

#[derive(Debug, Args, Serialize)]
pub struct EvaluateArgs {
    /// Predicted layout file (single-scene mode).
    #[arg(required_unless_present = "manifest")]
    pub pred: Option<PathBuf>,
    /// Ground-truth layout file (single-scene mode).
    #[arg(required_unless_present = "manifest")]
    pub gt: Option<PathBuf>,
    /// Batch mode: manifest of ground-truth layouts.
    #[arg(long, conflicts_with_all = ["pred", "gt"])]
    pub manifest: Option<PathBuf>,
    /// Batch mode: directory of predictions named like the manifest's
    /// layout files.
    #[arg(long, requires = "manifest")]
    pub pred_dir: Option<PathBuf>,
    /// Write the report as CSV here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write an SVG floor plan (ground truth in green, prediction dashed)
    /// here; single-scene mode only.
    #[arg(long, conflicts_with = "manifest")]
    pub plot: Option<PathBuf>,
}

pub fn csv_row(report: &EvaluationReport) -> String {
    format!(
        "{},{},{},{},{}",
        crate::files::csv_float(report.iou),
        crate::files::csv_float(report.iou_up_to_scale),
        csv_opt(report.corner_error),
        csv_opt(report.corner_error_normalized),
        crate::files::csv_float(report.scale),
    )
}

fn print_report(report: &EvaluationReport) {
    println!("iou3d: {:?}", report.iou);
    println!("iou3d_u2s: {:?}", report.iou_up_to_scale);
    match (report.corner_error, report.corner_error_normalized) {
        (Some(ce), Some(cen)) => {
            println!("ce: {ce:?}");
            println!("cen: {cen:?}");
        }
        _ => {
            println!("ce: n/a (corner counts differ)");
            println!("cen: n/a (corner counts differ)");
        }
    }
    println!("scale_star: {:?}", report.scale);
}

fn run_single(args: &EvaluateArgs, pred: &Path, gt: &Path) -> Result<(), AppError> {
    let prediction = read_layout(pred)?;
    let truth = read_layout(gt)?;
    let report = evaluate(&prediction, &truth)?;
    print_report(&report);
    if let Some(out) = &args.out {
        let note = serde_json::to_string(args)?;
        write_text(out, &format!("# config: {note}\n{CSV_HEADER}\n{}\n", csv_row(&report)))?;
    }
    if let Some(plot) = &args.plot {
        let note = serde_json::to_string(args)?;
        write_text(plot, &floor_plan_svg(&prediction, Some(&truth), &note))?;
    }
    Ok(())
}

/// Mean of the values selected by `pick`, when any are present.
fn mean_of<T>(items: &[T], pick: impl Fn(&T) -> Option<f64>) -> Option<f64> {
    let values: Vec<f64> = items.iter().filter_map(&pick).collect();
    if values.is_empty() {
        None
    } else {
        Some(values.iter().sum::<f64>() / values.len() as f64)
    }
}

/// Median of the values selected by `pick`, when any are present.
fn median_of<T>(items: &[T], pick: impl Fn(&T) -> Option<f64>) -> Option<f64> {
    let mut values: Vec<f64> = items.iter().filter_map(&pick).collect();
    if values.is_empty() {
        return None;
    }
    values.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = values.len();
    Some(if n % 2 == 1 { values[n / 2] } else { 0.5 * (values[n / 2 - 1] + values[n / 2]) })
}

/// Selects one metric (possibly absent) out of a report.
type MetricPick<'a> = &'a dyn Fn(&EvaluationReport) -> Option<f64>;

fn summary_row(label: &str, reports: &[EvaluationReport], median: bool) -> String {
    let stat: &dyn Fn(&[EvaluationReport], MetricPick) -> Option<f64> = if median {
        &|items, pick| median_of(items, pick)
    } else {
        &|items, pick| mean_of(items, pick)
    };
    format!(
        "{label},{},{},{},{},{}",
        csv_opt(stat(reports, &|r| Some(r.iou))),
        csv_opt(stat(reports, &|r| Some(r.iou_up_to_scale))),
        csv_opt(stat(reports, &|r| r.corner_error)),
        csv_opt(stat(reports, &|r| r.corner_error_normalized)),
        csv_opt(stat(reports, &|r| Some(r.scale))),
    )
}

fn run_batch(args: &EvaluateArgs, manifest_path: &Path) -> Result<(), AppError> {
    let pred_dir = args.pred_dir.as_ref().ok_or_else(|| {
        AppError::Parse("batch evaluation needs --pred-dir alongside --manifest".into())
    })?;
    let manifest = Manifest::read(manifest_path)?;

    let mut rows = Vec::new();
    let mut reports = Vec::new();
    for entry in &manifest.layouts {
        let truth = read_layout(&manifest.resolve(manifest_path, entry))?;
        let prediction = read_layout(&pred_dir.join(&entry.file))?;
        let report = evaluate(&prediction, &truth)?;
        rows.push(format!("{},{}", entry.file, csv_row(&report)));
        reports.push(report);
    }

    let mut csv = String::new();
    csv.push_str(&format!("# config: {}\n", serde_json::to_string(args)?));
    csv.push_str(&format!("scene,{CSV_HEADER}\n"));
    for row in &rows {
        csv.push_str(row);
        csv.push('\n');
    }
    csv.push_str(&summary_row("mean", &reports, false));
    csv.push('\n');
    csv.push_str(&summary_row("median", &reports, true));
    csv.push('\n');

    match &args.out {
        Some(out) => {
            write_text(out, &csv)?;
            println!("wrote {} rows to {}", reports.len(), out.display());
        }
        None => print!("{csv}"),
    }
    Ok(())
}

pub fn run(args: &EvaluateArgs) -> Result<(), AppError> {
    println!("config: {}", serde_json::to_string(args)?);
    match (&args.manifest, &args.pred, &args.gt) {
        (Some(manifest), None, None) => run_batch(args, manifest),
        (None, Some(pred), Some(gt)) => run_single(args, pred, gt),
        _ => Err(AppError::Parse(
            "evaluate needs either PRED and GT paths or --manifest with --pred-dir".into(),
        )),
    }
}
