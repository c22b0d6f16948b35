//! Attribute table input.

use std::io::Read;

use crate::error::{CliError, Result};

/// Reads `(id, value)` pairs from a CSV with a header row.
///
/// Blank or non-numeric values are errors; nothing is imputed.
pub fn read_attributes<R: Read>(
    input: R,
    id_col: &str,
    value_col: &str,
) -> Result<(Vec<String>, Vec<f64>)> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(input);
    let headers = reader
        .headers()
        .map_err(|e| CliError::Malformed(format!("csv header: {e}")))?
        .clone();
    let column = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| CliError::Malformed(format!("csv has no column {name:?}")))
    };
    let (id_at, value_at) = (column(id_col)?, column(value_col)?);

    let mut ids = Vec::new();
    let mut values = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| CliError::Malformed(format!("csv: {e}")))?;
        let line = record.position().map_or(0, |p| p.line());
        let id = record.get(id_at).unwrap_or_default();
        if id.is_empty() {
            return Err(CliError::Malformed(format!("line {line}: blank id")));
        }
        let raw = record.get(value_at).unwrap_or_default();
        let value: f64 = raw
            .parse()
            .ok()
            .filter(|v: &f64| v.is_finite())
            .ok_or_else(|| {
                CliError::Malformed(format!(
                    "line {line}: {value_col} for {id} is not a number: {raw:?}"
                ))
            })?;
        ids.push(id.to_string());
        values.push(value);
    }
    Ok((ids, values))
}
