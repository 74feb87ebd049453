//! CSV and JSON interchange.
//!
//! CSV files carry a header row, comma separators and `.` decimals. JSON
//! mirrors them with the metadata CSV cannot hold.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::DecayHint;
use crate::real::Real;
use crate::sampled::{infer_decay, GridKind, SampledFunction};

#[derive(Debug, Serialize, Deserialize)]
struct SampledJson {
    grid: Vec<f64>,
    values: Vec<f64>,
    grid_kind: GridKind,
    decay: DecayHint,
}

/// Interchange format.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    /// Guesses the format from a file extension (`.json`, anything else is CSV).
    pub fn from_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("json") => Format::Json,
            _ => Format::Csv,
        }
    }
}

fn read_columns(path: &Path, expect: &[&str]) -> Result<Vec<Vec<f64>>> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_path(path)?;
    let headers = rdr.headers()?.clone();
    let idx: Vec<usize> = expect
        .iter()
        .map(|name| {
            headers
                .iter()
                .position(|h| h == *name)
                .ok_or_else(|| Error::InvalidData(format!("{}: missing column '{name}'", path.display())))
        })
        .collect::<Result<_>>()?;
    let mut cols = vec![Vec::new(); expect.len()];
    for (line, rec) in rdr.records().enumerate() {
        let rec = rec?;
        for (c, &i) in idx.iter().enumerate() {
            let field = rec.get(i).unwrap_or("");
            let v: f64 = field.parse().map_err(|_| {
                Error::InvalidData(format!("{}: row {}: '{field}' is not a number", path.display(), line + 2))
            })?;
            cols[c].push(v);
        }
    }
    if cols[0].is_empty() {
        return Err(Error::InvalidData(format!("{}: no data rows", path.display())));
    }
    Ok(cols)
}

fn write_columns(path: &Path, names: &[&str], cols: &[&[f64]]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(names)?;
    let n = cols.iter().map(|c| c.len()).min().unwrap_or(0);
    for i in 0..n {
        w.write_record(cols.iter().map(|c| format_f64(c[i])))?;
    }
    w.flush()?;
    Ok(())
}

/// Shortest round-trip decimal representation.
pub fn format_f64(v: f64) -> String {
    format!("{v:?}")
}

/// Infers the grid spacing law of a sample grid.
pub fn infer_grid_kind(grid: &[f64]) -> GridKind {
    let n = grid.len();
    if n < 3 || grid[0] <= 0.0 {
        return GridKind::Uniform;
    }
    let h = (grid[n - 1] - grid[0]) / (n - 1) as f64;
    let uniform = grid.windows(2).all(|w| ((w[1] - w[0]) - h).abs() <= 1e-6 * h);
    if uniform {
        GridKind::Uniform
    } else {
        GridKind::LogUniform
    }
}

/// Reads a real sampled function (CSV `x,value` or JSON).
///
/// For CSV input the grid kind is inferred and the decay hint is `decay` when
/// given, else inferred from the tail.
pub fn read_sampled<T: Real>(path: &Path, decay: Option<DecayHint>) -> Result<SampledFunction<T>> {
    let (grid, values, kind, hint) = match Format::from_path(path) {
        Format::Json => {
            let j: SampledJson = serde_json::from_reader(File::open(path)?)?;
            let hint = decay.unwrap_or(j.decay);
            (j.grid, j.values, j.grid_kind, hint)
        }
        Format::Csv => {
            let mut cols = read_columns(path, &["x", "value"])?;
            let values = cols.pop().expect("two columns");
            let grid = cols.pop().expect("two columns");
            let kind = infer_grid_kind(&grid);
            let hint = decay.unwrap_or_else(|| infer_decay(&grid, &values));
            (grid, values, kind, hint)
        }
    };
    if values.is_empty() {
        return Err(Error::InvalidData(format!("{}: empty values", path.display())));
    }
    SampledFunction::new(
        grid.into_iter().map(T::cst).collect(),
        values.into_iter().map(T::cst).collect(),
        kind,
        hint,
    )
}

/// Writes a real sampled function in the requested format.
pub fn write_sampled<T: Real>(path: &Path, f: &SampledFunction<T>, format: Format) -> Result<()> {
    let grid: Vec<f64> = f.grid().iter().map(|x| x.as_f64()).collect();
    let values: Vec<f64> = f.values().iter().map(|x| x.as_f64()).collect();
    match format {
        Format::Csv => write_columns(path, &["x", "value"], &[&grid, &values]),
        Format::Json => {
            let j = SampledJson {
                grid,
                values,
                grid_kind: f.grid_kind(),
                decay: f.decay(),
            };
            write_json(path, &j)
        }
    }
}

pub(crate) fn write_json<S: Serialize>(path: &Path, value: &S) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

/// Rows of a table with named columns.
pub fn write_table(path: &Path, names: &[&str], cols: &[&[f64]], format: Format) -> Result<()> {
    match format {
        Format::Csv => write_columns(path, names, cols),
        Format::Json => {
            let map: serde_json::Map<String, serde_json::Value> = names
                .iter()
                .zip(cols)
                .map(|(n, c)| (n.to_string(), serde_json::json!(c)))
                .collect();
            write_json(path, &map)
        }
    }
}

/// Reads named numeric columns from a CSV file or a JSON object of arrays.
pub fn read_table(path: &Path, names: &[&str]) -> Result<Vec<Vec<f64>>> {
    match Format::from_path(path) {
        Format::Csv => read_columns(path, names),
        Format::Json => {
            let v: serde_json::Value = serde_json::from_reader(File::open(path)?)?;
            names
                .iter()
                .map(|name| {
                    let arr = v
                        .get(*name)
                        .and_then(|a| a.as_array())
                        .ok_or_else(|| Error::InvalidData(format!("{}: missing array '{name}'", path.display())))?;
                    arr.iter()
                        .map(|x| x.as_f64().ok_or_else(|| Error::InvalidData(format!("{}: non-numeric entry in '{name}'", path.display()))))
                        .collect()
                })
                .collect()
        }
    }
}
