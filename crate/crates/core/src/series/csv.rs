use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::{AnnualSeries, Unit};
use crate::error::{Error, Result};

/// Reads a `year,value` CSV with one header line.
///
/// The series name is the file stem. Row numbers in errors are 1-based file
/// lines, so the first data row is row 2.
pub fn load_csv(path: impl AsRef<Path>, unit: Unit) -> Result<AnnualSeries> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "series".into());
    parse_csv(&text, &name, unit, &path.display().to_string())
}

pub fn parse_csv(text: &str, name: &str, unit: Unit, source: &str) -> Result<AnnualSeries> {
    let parse_err = |row: usize, message: String| Error::Parse {
        path: source.to_string(),
        row,
        message,
    };

    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header.trim().trim_start_matches('\u{feff}').starts_with("year") => {}
        Some((_, header)) => {
            return Err(parse_err(1, format!("expected header `year,value`, got `{header}`")))
        }
        None => {
            return Err(Error::EmptyFile {
                path: source.to_string(),
            })
        }
    }

    let mut first_year = None;
    let mut values = Vec::new();
    for (idx, line) in lines {
        let row = idx + 1;
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        let mut fields = line.split(',');
        let (Some(y), Some(v), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(parse_err(row, format!("expected 2 fields, got `{line}`")));
        };
        let year: i32 = y
            .trim()
            .parse()
            .map_err(|_| parse_err(row, format!("invalid year `{}`", y.trim())))?;
        let value: f64 = v
            .trim()
            .parse()
            .map_err(|_| parse_err(row, format!("non-numeric value `{}`", v.trim())))?;
        if !value.is_finite() {
            return Err(parse_err(row, format!("non-finite value `{}`", v.trim())));
        }
        match first_year {
            None => first_year = Some(year),
            Some(fy) => {
                let expected = fy + values.len() as i32;
                if year != expected {
                    return Err(Error::YearGap {
                        path: source.to_string(),
                        row,
                        expected,
                        found: year,
                    });
                }
            }
        }
        values.push(value);
    }

    let Some(first_year) = first_year else {
        return Err(Error::EmptyFile {
            path: source.to_string(),
        });
    };
    AnnualSeries::new(name, unit, first_year, values, source)
}

/// Renders a series as `year,value` CSV. Values use the shortest
/// representation that parses back to the same `f64`.
pub fn to_csv_string(series: &AnnualSeries) -> String {
    let mut out = String::from("year,value\n");
    for (year, v) in series.iter() {
        let _ = writeln!(out, "{year},{v}");
    }
    out
}

pub fn save_csv(series: &AnnualSeries, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, to_csv_string(series)).map_err(|e| Error::io(path, e))
}
