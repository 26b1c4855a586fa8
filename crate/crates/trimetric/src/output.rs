//! Tables, CSV and SVG rendering, and atomic file output.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use serde::Serialize;

use crate::error::CliResult;

/// Seventeen significant digits: enough to round-trip any `f64`.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

/// A rectangular table of labelled numeric columns plus optional text
/// columns placed first.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Table {
    pub labels: Vec<String>,
    pub columns: Vec<String>,
    pub rows: Vec<(Vec<String>, Vec<f64>)>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            labels: Vec::new(),
            columns: columns.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn with_labels(labels: &[&str], columns: &[&str]) -> Self {
        Self {
            labels: labels.iter().map(|s| s.to_string()).collect(),
            ..Self::new(columns)
        }
    }

    pub fn push(&mut self, values: Vec<f64>) {
        debug_assert!(self.labels.is_empty() && values.len() == self.columns.len());
        self.rows.push((Vec::new(), values));
    }

    pub fn push_labelled(&mut self, labels: Vec<String>, values: Vec<f64>) {
        debug_assert!(labels.len() == self.labels.len() && values.len() == self.columns.len());
        self.rows.push((labels, values));
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|(_, v)| v[i]).collect())
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let header: Vec<&str> = self.labels.iter().chain(&self.columns).map(String::as_str).collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for (labels, values) in &self.rows {
            let cells: Vec<String> = labels.iter().cloned().chain(values.iter().map(|&x| num(x))).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

/// Writes through a temporary file in the target directory and renames it
/// into place, so a failed run never leaves a partial file behind.
pub fn write_atomic(path: &Path, contents: &[u8]) -> CliResult<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// Writes to `path` atomically, or to standard output when `path` is `None`.
pub fn emit(path: Option<&Path>, contents: &str) -> CliResult<()> {
    match path {
        Some(p) => write_atomic(p, contents.as_bytes()),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(contents.as_bytes())?;
            lock.flush()?;
            Ok(())
        }
    }
}

/// A closed polygon per entry, fitted into a 400 x 400 canvas with the
/// y-axis pointing up; optional dots for extra points.
pub fn svg_polygons(polys: &[Vec<(f64, f64)>], dots: &[(f64, f64)]) -> String {
    let all: Vec<(f64, f64)> = polys.iter().flatten().chain(dots).copied().collect();
    let (mut x0, mut x1, mut y0, mut y1) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for &(x, y) in &all {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    let span = (x1 - x0).max(y1 - y0).max(1e-300);
    let scale = 360.0 / span;
    let map = |x: f64, y: f64| (20.0 + (x - x0) * scale, 380.0 - (y - y0) * scale);

    let mut s = String::new();
    s.push_str("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"400\" height=\"400\" viewBox=\"0 0 400 400\">\n");
    let (ax, ay) = map(0.0, 0.0);
    let _ = writeln!(s, "  <line x1=\"0\" y1=\"{ay:.3}\" x2=\"400\" y2=\"{ay:.3}\" stroke=\"#bbb\"/>");
    let _ = writeln!(s, "  <line x1=\"{ax:.3}\" y1=\"0\" x2=\"{ax:.3}\" y2=\"400\" stroke=\"#bbb\"/>");
    for poly in polys {
        let pts: Vec<String> = poly
            .iter()
            .map(|&(x, y)| {
                let (u, v) = map(x, y);
                format!("{u:.3},{v:.3}")
            })
            .collect();
        let _ = writeln!(s, "  <polygon points=\"{}\" fill=\"none\" stroke=\"black\"/>", pts.join(" "));
    }
    for &(x, y) in dots {
        let (u, v) = map(x, y);
        let _ = writeln!(s, "  <circle cx=\"{u:.3}\" cy=\"{v:.3}\" r=\"3\"/>");
    }
    s.push_str("</svg>\n");
    s
}
