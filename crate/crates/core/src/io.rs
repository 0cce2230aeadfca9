//! File formats: jet/curve JSON in, CSV samples and JSON manifests out.
//!
//! Floats are written with Rust's shortest round-trip formatting, so reading
//! a file back reproduces every value bit for bit.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extension::{ExtendedCurve, VerificationReport};
use crate::heisenberg::SampledCurve;

/// Reads JSON from `path`; parse errors carry line and column.
pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

/// `s,x1,y1,…,xn,yn,t,dx1,dy1,…,dxn,dyn,dt`.
pub fn csv_header(n: usize) -> String {
    let mut cols = vec!["s".to_string()];
    for prefix in ["", "d"] {
        for j in 1..=n {
            cols.push(format!("{prefix}x{j}"));
            cols.push(format!("{prefix}y{j}"));
        }
        cols.push(format!("{prefix}t"));
    }
    cols.join(",")
}

pub fn write_csv<W: Write>(mut out: W, curve: &SampledCurve<f64>) -> Result<()> {
    let n = curve.values.first().map_or(1, |v| v.n());
    writeln!(out, "{}", csv_header(n))?;
    for (i, s) in curve.grid.iter().enumerate() {
        let mut row = vec![s.to_string()];
        row.extend(curve.values[i].coords().iter().map(f64::to_string));
        if let Some(d) = &curve.derivs {
            row.extend(d[i].iter().map(f64::to_string));
        }
        writeln!(out, "{}", row.join(","))?;
    }
    Ok(())
}

/// Parses a CSV written by [`write_csv`] into rows of numbers.
pub fn read_csv_rows(text: &str) -> Result<Vec<Vec<f64>>> {
    text.lines()
        .skip(1)
        .filter(|l| !l.is_empty())
        .map(|l| {
            l.split(',')
                .map(|c| c.parse::<f64>().map_err(|e| Error::Domain(format!("bad CSV number {c:?}: {e}"))))
                .collect()
        })
        .collect()
}

/// Extension together with its verification report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Manifest {
    #[serde(flatten)]
    pub curve: ExtendedCurve,
    pub report: VerificationReport,
}

/// `per_segment` evenly spaced points on every segment of the extension,
/// merged into one strictly increasing grid.
pub fn segment_grid(ext: &ExtendedCurve, per_segment: usize) -> Vec<f64> {
    let m = per_segment.max(2);
    let mut grid: Vec<f64> = Vec::new();
    for seg in ext.segments() {
        let [lo, hi] = seg.range();
        for k in 0..m {
            grid.push(if k + 1 == m { hi } else { lo + (hi - lo) * k as f64 / (m - 1) as f64 });
        }
    }
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    grid
}
