//! File formats: CSV point files (one point per row, comma-separated decimal
//! coordinates, optional header), CSV distance matrices, and graph edge
//! lists (`n m` on the first line, then `u v` per edge, 0-indexed).

use std::fs;
use std::path::Path;

use crate::error::{AppError, AppResult};

/// Header handling for CSV point files.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HeaderMode {
    /// Treat the first row as a header when it contains a non-numeric token.
    #[default]
    Auto,
    Yes,
    No,
}

impl std::str::FromStr for HeaderMode {
    type Err = AppError;
    fn from_str(s: &str) -> AppResult<Self> {
        match s {
            "auto" => Ok(HeaderMode::Auto),
            "yes" => Ok(HeaderMode::Yes),
            "no" => Ok(HeaderMode::No),
            other => Err(AppError::Config(format!(
                "unknown header mode '{other}' (expected auto|yes|no)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct LoadOptions {
    pub header: HeaderMode,
    /// Keep only columns whose every data cell parses as a number, instead of
    /// failing on the first non-numeric cell.
    pub drop_non_numeric: bool,
    /// Explicit allowlist of column indices (applied before numeric checks).
    pub columns: Option<Vec<usize>>,
    /// Min-max normalize every kept column to [0, 1].
    pub normalize: bool,
}

#[derive(Debug, Clone)]
pub struct CsvLoad {
    pub points: Vec<Vec<f64>>,
    /// Data rows parsed (header excluded).
    pub rows: usize,
    /// Columns in the file.
    pub cols_in_file: usize,
    /// Columns kept after the allowlist and numeric filtering.
    pub cols_kept: usize,
    pub header_skipped: bool,
}

/// Load a CSV point file with default options (auto header, strict numeric).
pub fn load_csv(path: &Path, header: HeaderMode) -> AppResult<Vec<Vec<f64>>> {
    let opts = LoadOptions {
        header,
        ..LoadOptions::default()
    };
    Ok(load_csv_with(path, &opts)?.points)
}

pub fn load_csv_with(path: &Path, opts: &LoadOptions) -> AppResult<CsvLoad> {
    let text = fs::read_to_string(path)
        .map_err(|e| AppError::Data(format!("cannot read {}: {e}", path.display())))?;
    // (1-based line number, cells) with blank lines ignored.
    let mut rows: Vec<(usize, Vec<&str>)> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        rows.push((idx + 1, line.split(',').map(str::trim).collect()));
    }
    if rows.is_empty() {
        return Err(AppError::Data(format!("{}: no data rows", path.display())));
    }

    let first_has_text = rows[0].1.iter().any(|cell| cell.parse::<f64>().is_err());
    let header_skipped = match opts.header {
        HeaderMode::Yes => true,
        HeaderMode::No => false,
        HeaderMode::Auto => first_has_text,
    };
    if header_skipped {
        rows.remove(0);
    }
    if rows.is_empty() {
        return Err(AppError::Data(format!(
            "{}: header only, no data rows",
            path.display()
        )));
    }

    let cols_in_file = rows[0].1.len();
    for (line_no, cells) in &rows {
        if cells.len() != cols_in_file {
            return Err(AppError::Data(format!(
                "{} line {line_no}: ragged row ({} cells, expected {cols_in_file})",
                path.display(),
                cells.len()
            )));
        }
    }

    let candidate: Vec<usize> = match &opts.columns {
        Some(cols) => {
            for &c in cols {
                if c >= cols_in_file {
                    return Err(AppError::Config(format!(
                        "column {c} out of range: file has {cols_in_file} columns"
                    )));
                }
            }
            cols.clone()
        }
        None => (0..cols_in_file).collect(),
    };

    let kept: Vec<usize> = if opts.drop_non_numeric {
        candidate
            .into_iter()
            .filter(|&c| {
                rows.iter()
                    .all(|(_, cells)| parse_cell(cells[c]).is_some())
            })
            .collect()
    } else {
        candidate
    };
    if kept.is_empty() {
        return Err(AppError::Data(format!(
            "{}: no numeric columns remain",
            path.display()
        )));
    }

    let mut points = Vec::with_capacity(rows.len());
    for (line_no, cells) in &rows {
        let mut point = Vec::with_capacity(kept.len());
        for &c in &kept {
            match parse_cell(cells[c]) {
                Some(v) => point.push(v),
                None => {
                    return Err(AppError::Data(format!(
                        "{} line {line_no}: non-numeric cell '{}' in column {c}",
                        path.display(),
                        cells[c]
                    )))
                }
            }
        }
        points.push(point);
    }

    if opts.normalize {
        normalize_min_max(&mut points);
    }

    Ok(CsvLoad {
        rows: points.len(),
        cols_in_file,
        cols_kept: kept.len(),
        header_skipped,
        points,
    })
}

fn parse_cell(cell: &str) -> Option<f64> {
    cell.parse::<f64>().ok().filter(|v| v.is_finite())
}

/// Scale each column to [0, 1]; constant columns collapse to 0.
pub fn normalize_min_max(points: &mut [Vec<f64>]) {
    if points.is_empty() {
        return;
    }
    let dim = points[0].len();
    for c in 0..dim {
        let min = points.iter().map(|p| p[c]).fold(f64::INFINITY, f64::min);
        let max = points.iter().map(|p| p[c]).fold(f64::NEG_INFINITY, f64::max);
        let span = max - min;
        for p in points.iter_mut() {
            p[c] = if span > 0.0 { (p[c] - min) / span } else { 0.0 };
        }
    }
}

/// Load a square distance matrix from CSV (no header).
pub fn load_matrix_csv(path: &Path) -> AppResult<Vec<Vec<f64>>> {
    let opts = LoadOptions {
        header: HeaderMode::No,
        ..LoadOptions::default()
    };
    let load = load_csv_with(path, &opts)?;
    if load.points.len() != load.cols_kept {
        return Err(AppError::Data(format!(
            "{}: matrix must be square, got {} rows x {} columns",
            path.display(),
            load.points.len(),
            load.cols_kept
        )));
    }
    Ok(load.points)
}

/// Load a graph file: `n m` on the first line, then `m` lines of `u v`.
pub fn load_graph(path: &Path) -> AppResult<(usize, Vec<(usize, usize)>)> {
    let text = fs::read_to_string(path)
        .map_err(|e| AppError::Data(format!("cannot read {}: {e}", path.display())))?;
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (_, head) = lines
        .next()
        .ok_or_else(|| AppError::Data(format!("{}: empty graph file", path.display())))?;
    let mut head_it = head.split_whitespace();
    let n: usize = head_it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| AppError::Data(format!("{}: first line must be 'n m'", path.display())))?;
    let m: usize = head_it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| AppError::Data(format!("{}: first line must be 'n m'", path.display())))?;
    let mut edges = Vec::with_capacity(m);
    for (line_no, line) in lines {
        let mut it = line.split_whitespace();
        let parse = |t: Option<&str>| -> AppResult<usize> {
            t.and_then(|t| t.parse().ok()).ok_or_else(|| {
                AppError::Data(format!(
                    "{} line {line_no}: expected 'u v'",
                    path.display()
                ))
            })
        };
        let u = parse(it.next())?;
        let v = parse(it.next())?;
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(AppError::Data(format!(
            "{}: header declares {m} edges but {} were listed",
            path.display(),
            edges.len()
        )));
    }
    Ok((n, edges))
}
