//! Reading observations from plain-text or single-column CSV files.

use std::path::Path;

use crate::error::{Error, Result};

/// Parses one observation per line. Blank lines and `#` comments are skipped;
/// a non-numeric first line is treated as a CSV header.
pub fn parse_observations(text: &str, origin: &Path) -> Result<Vec<f64>> {
    let mut values = Vec::new();
    let mut seen_content = false;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim().trim_start_matches('\u{feff}');
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let field = line.trim_end_matches(',').trim().trim_matches('"');
        if field.contains(',') {
            return Err(Error::Parse {
                path: origin.to_path_buf(),
                line: i + 1,
                message: format!("expected a single column, found `{line}`"),
            });
        }
        match field.parse::<f64>() {
            Ok(v) if v.is_finite() => values.push(v),
            _ if !seen_content => {} // header
            _ => {
                return Err(Error::Parse {
                    path: origin.to_path_buf(),
                    line: i + 1,
                    message: format!("`{line}` is not a number"),
                })
            }
        }
        seen_content = true;
    }
    if values.is_empty() {
        return Err(Error::Parse {
            path: origin.to_path_buf(),
            line: 0,
            message: "no observations found".into(),
        });
    }
    Ok(values)
}

pub fn read_observations(path: &Path) -> Result<Vec<f64>> {
    let text = std::fs::read_to_string(path)?;
    parse_observations(&text, path)
}
