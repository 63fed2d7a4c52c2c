//! Shared CLI plumbing: list parsing, CSV signal/grid ingestion, and
//! deterministic CSV emission with a configuration header.

use std::fs;
use std::path::{Path, PathBuf};

use vandiff::functions::BuiltinFunction;
use vandiff::localrep::Signal;

use crate::CliError;

/// Parses a comma-separated list of finite floats.
pub fn parse_float_list(name: &str, text: &str) -> Result<Vec<f64>, CliError> {
    let mut out = Vec::new();
    for token in text.split(',') {
        let token = token.trim();
        let value: f64 = token
            .parse()
            .map_err(|_| CliError::Usage(format!("{name}: '{token}' is not a number")))?;
        if !value.is_finite() {
            return Err(CliError::Usage(format!("{name}: '{token}' is not finite")));
        }
        out.push(value);
    }
    if out.is_empty() {
        return Err(CliError::Usage(format!("{name}: empty list")));
    }
    Ok(out)
}

/// Parses a spacing list and checks every entry is positive.
pub fn parse_spacings(text: &str) -> Result<Vec<f64>, CliError> {
    let spacings = parse_float_list("--h", text)?;
    for &h in &spacings {
        if h <= 0.0 {
            return Err(CliError::Usage(format!("--h: spacing {h} is not positive")));
        }
    }
    Ok(spacings)
}

/// Parses an order spec: either `a..b` (inclusive on both ends) or a comma
/// list of non-negative integers. Returns the orders sorted and deduplicated.
pub fn parse_orders(text: &str) -> Result<Vec<usize>, CliError> {
    let mut orders = if let Some((lo, hi)) = text.split_once("..") {
        let lo: usize = lo
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("--orders: '{lo}' is not an integer")))?;
        let hi: usize = hi
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("--orders: '{hi}' is not an integer")))?;
        if hi < lo {
            return Err(CliError::Usage(format!("--orders: empty range {lo}..{hi}")));
        }
        (lo..=hi).collect::<Vec<_>>()
    } else {
        text.split(',')
            .map(|token| {
                token.trim().parse().map_err(|_| {
                    CliError::Usage(format!("--orders: '{}' is not an integer", token.trim()))
                })
            })
            .collect::<Result<Vec<usize>, CliError>>()?
    };
    orders.sort_unstable();
    orders.dedup();
    if orders.is_empty() {
        return Err(CliError::Usage("--orders: empty list".into()));
    }
    Ok(orders)
}

/// Looks up a built-in function or reports the available names.
pub fn parse_function(name: &str) -> Result<BuiltinFunction, CliError> {
    BuiltinFunction::parse(name).ok_or_else(|| {
        CliError::Usage(format!(
            "unknown function '{name}'; built-ins: {}",
            BuiltinFunction::names()
        ))
    })
}

/// Requires a univariate built-in.
pub fn parse_univariate(name: &str) -> Result<BuiltinFunction, CliError> {
    let f = parse_function(name)?;
    if f.is_bivariate() {
        return Err(CliError::Usage(format!(
            "'{name}' is bivariate; this command needs a univariate function"
        )));
    }
    Ok(f)
}

/// Exactly one of --fn / --input must be present.
pub fn require_one_source<'a>(
    function: &'a Option<String>,
    input: &'a Option<PathBuf>,
) -> Result<(), CliError> {
    match (function, input) {
        (Some(_), Some(_)) => Err(CliError::Usage(
            "--fn and --input are mutually exclusive".into(),
        )),
        (None, None) => Err(CliError::Usage("one of --fn or --input is required".into())),
        _ => Ok(()),
    }
}

/// Reads a 1D signal CSV: header `x,value`, rows strictly ascending in x on
/// a uniform grid (tolerance 1e−6 of the spacing). Lines starting with `#`
/// are ignored, so files this tool wrote (config line first) round-trip as
/// inputs. Diagnostics cite physical line numbers.
pub fn read_signal(path: &Path) -> Result<Signal, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_path(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let headers = reader
        .headers()
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?
        .clone();
    if headers.iter().collect::<Vec<_>>() != ["x", "value"] {
        return Err(CliError::Usage(format!(
            "{}: expected header 'x,value', found '{}'",
            path.display(),
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut lines = Vec::new();
    let mut xs = Vec::new();
    let mut values = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        let line = record_line(&record, xs.len());
        if record.len() != 2 {
            return Err(CliError::Usage(format!(
                "{}: row at line {line} has {} fields, expected 2",
                path.display(),
                record.len()
            )));
        }
        lines.push(line);
        xs.push(parse_csv_number(path, line, &record[0])?);
        values.push(parse_csv_number(path, line, &record[1])?);
    }
    if xs.len() < 2 {
        return Err(CliError::Usage(format!(
            "{}: need at least 2 samples, found {}",
            path.display(),
            xs.len()
        )));
    }
    if xs.windows(2).any(|w| w[1] <= w[0]) {
        return Err(CliError::Usage(format!(
            "{}: x column must be strictly ascending",
            path.display()
        )));
    }
    let spacing = (xs[xs.len() - 1] - xs[0]) / (xs.len() - 1) as f64;
    for (i, &x) in xs.iter().enumerate() {
        let expected = xs[0] + i as f64 * spacing;
        if (x - expected).abs() > 1e-6 * spacing {
            return Err(CliError::Usage(format!(
                "{}: x column is not uniformly spaced (line {}: {} vs expected {})",
                path.display(),
                lines[i],
                x,
                expected
            )));
        }
    }
    Signal::new(xs[0], spacing, values).map_err(|e| CliError::Usage(e.to_string()))
}

/// One data row of a 2D grid CSV, with the physical line it came from.
pub struct GridRow {
    pub line: u64,
    pub x: f64,
    pub y: f64,
    pub value: f64,
}

/// Reads a 2D grid CSV: header `x,y,value`, one row per sample. Lines
/// starting with `#` are ignored, so files this tool wrote round-trip.
pub fn read_grid_rows(path: &Path) -> Result<Vec<GridRow>, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_path(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let headers = reader
        .headers()
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?
        .clone();
    if headers.iter().collect::<Vec<_>>() != ["x", "y", "value"] {
        return Err(CliError::Usage(format!(
            "{}: expected header 'x,y,value', found '{}'",
            path.display(),
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut rows: Vec<GridRow> = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        let line = record_line(&record, rows.len());
        if record.len() != 3 {
            return Err(CliError::Usage(format!(
                "{}: row at line {line} has {} fields, expected 3",
                path.display(),
                record.len()
            )));
        }
        rows.push(GridRow {
            line,
            x: parse_csv_number(path, line, &record[0])?,
            y: parse_csv_number(path, line, &record[1])?,
            value: parse_csv_number(path, line, &record[2])?,
        });
    }
    Ok(rows)
}

/// Physical 1-based line a record starts on, falling back to the count-based
/// guess (header + 1 + index) when the reader reports no position.
fn record_line(record: &csv::StringRecord, index: usize) -> u64 {
    record
        .position()
        .map(|p| p.line())
        .unwrap_or(index as u64 + 2)
}

fn parse_csv_number(path: &Path, line: u64, text: &str) -> Result<f64, CliError> {
    let value: f64 = text.parse().map_err(|_| {
        CliError::Usage(format!(
            "{}: row {line}: '{text}' is not a number",
            path.display()
        ))
    })?;
    if !value.is_finite() {
        return Err(CliError::Usage(format!(
            "{}: row {line}: '{text}' is not finite",
            path.display()
        )));
    }
    Ok(value)
}

/// Joins floats with commas using the shortest round-trip representation.
pub fn join_floats(values: &[f64]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Writes the finished CSV to the output file or stdout.
pub fn emit(output: Option<&PathBuf>, content: &str) -> Result<(), CliError> {
    match output {
        Some(path) => fs::write(path, content)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}
