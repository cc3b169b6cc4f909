//! Shared flag value parsers.

use nclayout::WorldMode;

pub fn parse_mode(s: &str) -> Result<WorldMode, String> {
    match s {
        "manhattan" => Ok(WorldMode::Manhattan),
        "atlanta" => Ok(WorldMode::Atlanta),
        other => Err(format!("unknown mode '{other}'; expected 'manhattan' or 'atlanta'")),
    }
}

fn split_range(s: &str) -> Result<(&str, &str), String> {
    s.split_once(':')
        .ok_or_else(|| format!("expected MIN:MAX, got '{s}'"))
}

pub fn parse_usize_range(s: &str) -> Result<(usize, usize), String> {
    let (lo, hi) = split_range(s)?;
    let lo: usize = lo.trim().parse().map_err(|e| format!("bad minimum '{lo}': {e}"))?;
    let hi: usize = hi.trim().parse().map_err(|e| format!("bad maximum '{hi}': {e}"))?;
    if lo > hi {
        return Err(format!("range minimum {lo} exceeds maximum {hi}"));
    }
    Ok((lo, hi))
}

pub fn parse_f64_range(s: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = split_range(s)?;
    let lo: f64 = lo.trim().parse().map_err(|e| format!("bad minimum '{lo}': {e}"))?;
    let hi: f64 = hi.trim().parse().map_err(|e| format!("bad maximum '{hi}': {e}"))?;
    if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
        return Err(format!("range {lo}:{hi} must be finite and ordered"));
    }
    Ok((lo, hi))
}
