//! Feature table files: one text table per (shape, kind), row-major, with a
//! small header carrying dimensions and normalization statistics.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use ndarray::Array2;

use crate::error::{Error, Result};
use crate::features::{FeatureKind, FeatureMatrix, FeatureStats};

const MAGIC: &str = "meshseg-features v1";

/// Write a feature matrix (and the stats it was normalized with, if any).
pub fn write_feature_table(
    path: impl AsRef<Path>,
    fm: &FeatureMatrix,
    stats: Option<&FeatureStats>,
) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "{MAGIC}")?;
    writeln!(w, "kind {}", fm.kind.name())?;
    writeln!(w, "rows {}", fm.rows())?;
    writeln!(w, "cols {}", fm.channels())?;
    writeln!(w, "normalized {}", u8::from(fm.normalized))?;
    match stats {
        Some(s) => {
            writeln!(w, "stats 1")?;
            writeln!(w, "{}", join(&s.min))?;
            writeln!(w, "{}", join(&s.max))?;
        }
        None => writeln!(w, "stats 0")?,
    }
    for row in fm.values.rows() {
        writeln!(w, "{}", join(row.as_slice().unwrap()))?;
    }
    Ok(())
}

pub fn read_feature_table(
    path: impl AsRef<Path>,
) -> Result<(FeatureMatrix, Option<FeatureStats>)> {
    let path = path.as_ref();
    let file = BufReader::new(File::open(path)?);
    let mut lines = file.lines();
    let mut next = |what: &str| -> Result<String> {
        lines
            .next()
            .transpose()?
            .ok_or_else(|| bad(path, format!("missing {what}")))
    };

    if next("header")? != MAGIC {
        return Err(bad(path, "bad magic".into()));
    }
    let kind_line = next("kind")?;
    let kind = kind_line
        .strip_prefix("kind ")
        .and_then(FeatureKind::from_name)
        .ok_or_else(|| bad(path, "bad kind".into()))?;
    let rows: usize = field(path, &next("rows")?, "rows")?;
    let cols: usize = field(path, &next("cols")?, "cols")?;
    let normalized: u8 = field(path, &next("normalized")?, "normalized")?;
    let has_stats: u8 = field(path, &next("stats")?, "stats")?;
    let stats = if has_stats == 1 {
        let min = parse_row(path, &next("stats min")?, cols)?;
        let max = parse_row(path, &next("stats max")?, cols)?;
        Some(FeatureStats { min, max })
    } else {
        None
    };

    let mut data = Vec::with_capacity(rows * cols);
    for r in 0..rows {
        let line = next(&format!("row {r}"))?;
        data.extend(parse_row(path, &line, cols)?);
    }
    let values = Array2::from_shape_vec((rows, cols), data)
        .map_err(|e| bad(path, format!("shape error: {e}")))?;
    Ok((
        FeatureMatrix {
            kind,
            values,
            normalized: normalized == 1,
        },
        stats,
    ))
}

fn join(vals: &[f64]) -> String {
    let strs: Vec<String> = vals.iter().map(|v| format!("{v:?}")).collect();
    strs.join(" ")
}

fn bad(path: &Path, message: String) -> Error {
    Error::Parse {
        path: path.display().to_string(),
        line: 0,
        message,
    }
}

fn field<T: std::str::FromStr>(path: &Path, line: &str, key: &str) -> Result<T> {
    line.strip_prefix(key)
        .map(str::trim)
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| bad(path, format!("bad {key} line: {line}")))
}

fn parse_row(path: &Path, line: &str, cols: usize) -> Result<Vec<f64>> {
    let vals: Vec<f64> = line
        .split_whitespace()
        .map(|t| t.parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| bad(path, format!("bad float: {e}")))?;
    if vals.len() != cols {
        return Err(bad(
            path,
            format!("expected {cols} values per row, found {}", vals.len()),
        ));
    }
    Ok(vals)
}
