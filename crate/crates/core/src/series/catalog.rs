use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use super::csv::parse_csv;
use super::{AnnualSeries, Unit};
use crate::error::{Error, Result};

/// Environment variable naming a directory that replaces the bundled data.
pub const DATA_DIR_ENV: &str = "BOXJEN_DATA_DIR";

#[derive(Debug, Clone, PartialEq)]
pub struct CatalogEntry {
    pub series: AnnualSeries,
    pub citation: String,
}

struct Bundled {
    key: &'static str,
    file: &'static str,
    unit: Unit,
    citation: &'static str,
    text: &'static str,
}

macro_rules! bundled {
    ($key:literal, $file:literal, $unit:expr, $citation:literal) => {
        Bundled {
            key: $key,
            file: $file,
            unit: $unit,
            citation: $citation,
            text: include_str!(concat!("../../data/v1/", $file)),
        }
    };
}

const BUNDLED: &[Bundled] = &[
    bundled!(
        "gdp_rs_crore_1971_2025",
        "gdp_rs_crore_1971_2025.csv",
        Unit::RupeeCrore,
        "RBI database, GDP at current prices (Rs crore); transcribed from the published GDP-in-dollars appendix"
    ),
    bundled!(
        "exchange_rate_1971_2024",
        "exchange_rate_1971_2024.csv",
        Unit::RupeesPerUsd,
        "RBI website, annual average Rs per US$; transcribed from the published GDP-in-dollars appendix"
    ),
    bundled!(
        "gdp_rs_crore_1991_2025",
        "gdp_rs_crore_1991_2025.csv",
        Unit::RupeeCrore,
        "RBI database, GDP at current prices (Rs crore); transcribed from the published GDP-in-dollars appendix"
    ),
    bundled!(
        "gni_forecast_entire",
        "reference/gni_forecast_entire.csv",
        Unit::UsdPerCapita,
        "published per capita GNI forecast, 1962-2023 sample"
    ),
    bundled!(
        "gni_forecast_sub",
        "reference/gni_forecast_sub.csv",
        Unit::UsdPerCapita,
        "published per capita GNI forecast, 1991-2023 sample"
    ),
    bundled!(
        "gfd_forecast_entire",
        "reference/gfd_forecast_entire.csv",
        Unit::RupeeCrore,
        "published gross fiscal deficit forecast, 1971-2025 sample"
    ),
    bundled!(
        "gfd_forecast_sub",
        "reference/gfd_forecast_sub.csv",
        Unit::RupeeCrore,
        "published gross fiscal deficit forecast, 1991-2025 sample"
    ),
    bundled!(
        "gdp_forecast_entire",
        "reference/gdp_forecast_entire.csv",
        Unit::RupeeCrore,
        "published GDP forecast"
    ),
    bundled!(
        "gdp_forecast_sub",
        "reference/gdp_forecast_sub.csv",
        Unit::RupeeCrore,
        "published GDP forecast, 1991-2025 sample"
    ),
    bundled!(
        "exchange_rate_forecast_entire",
        "reference/exchange_rate_forecast_entire.csv",
        Unit::RupeesPerUsd,
        "published exchange-rate forecast with 95% bounds, 1971-2024 sample"
    ),
    bundled!(
        "exchange_rate_forecast_sub",
        "reference/exchange_rate_forecast_sub.csv",
        Unit::RupeesPerUsd,
        "published exchange-rate forecast with 95% bounds, 1991-2024 sample"
    ),
];

/// Read-only map from dataset key to series and citation.
#[derive(Debug, Clone, Default)]
pub struct Catalog {
    entries: BTreeMap<String, CatalogEntry>,
    bounds: BTreeMap<String, Vec<(i32, f64, f64, f64)>>,
}

impl Catalog {
    /// Catalog of the data compiled into the library.
    pub fn bundled() -> Self {
        let mut catalog = Catalog::default();
        for b in BUNDLED {
            catalog
                .insert_text(b.key, b.text, b.unit, b.citation, &format!("bundled:{}", b.file))
                .unwrap_or_else(|e| panic!("bundled dataset {} is invalid: {e}", b.key));
        }
        catalog
    }

    /// Catalog read from `dir`, using the same file layout as the bundled data.
    /// Keys whose file is absent are skipped.
    pub fn from_dir(dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref();
        let mut catalog = Catalog::default();
        for b in BUNDLED {
            let path = dir.join(b.file);
            if !path.exists() {
                continue;
            }
            let text = std::fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
            catalog.insert_text(b.key, &text, b.unit, b.citation, &path.display().to_string())?;
        }
        Ok(catalog)
    }

    /// Uses [`DATA_DIR_ENV`] when set, otherwise the bundled data.
    pub fn from_env() -> Result<Self> {
        match std::env::var_os(DATA_DIR_ENV) {
            Some(dir) if !dir.is_empty() => Catalog::from_dir(PathBuf::from(dir)),
            _ => Ok(Catalog::bundled()),
        }
    }

    fn insert_text(
        &mut self,
        key: &str,
        text: &str,
        unit: Unit,
        citation: &str,
        source: &str,
    ) -> Result<()> {
        let header = text.lines().next().unwrap_or_default();
        let series = if header.trim() == "year,forecast,lower,upper" {
            let rows = parse_bounds(text, source)?;
            let values = rows.iter().map(|r| r.1).collect();
            let s = AnnualSeries::new(key, unit, rows[0].0, values, source)?;
            self.bounds.insert(key.to_string(), rows);
            s
        } else {
            parse_csv(text, key, unit, source)?
        };
        self.entries.insert(
            key.to_string(),
            CatalogEntry {
                series: series.with_provenance(format!("{citation} [{source}]")),
                citation: citation.to_string(),
            },
        );
        Ok(())
    }

    pub fn get(&self, key: &str) -> Result<&CatalogEntry> {
        self.entries
            .get(key)
            .ok_or_else(|| Error::UnknownDataset(key.to_string()))
    }

    pub fn series(&self, key: &str) -> Result<AnnualSeries> {
        Ok(self.get(key)?.series.clone())
    }

    /// `(year, point, lower, upper)` rows for reference tables that carry bounds.
    pub fn bounds(&self, key: &str) -> Result<&[(i32, f64, f64, f64)]> {
        self.bounds
            .get(key)
            .map(Vec::as_slice)
            .ok_or_else(|| Error::UnknownDataset(key.to_string()))
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }
}

fn parse_bounds(text: &str, source: &str) -> Result<Vec<(i32, f64, f64, f64)>> {
    let mut rows: Vec<(i32, f64, f64, f64)> = Vec::new();
    for (idx, line) in text.lines().enumerate().skip(1) {
        if line.trim().is_empty() {
            continue;
        }
        let err = |message: String| Error::Parse {
            path: source.to_string(),
            row: idx + 1,
            message,
        };
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 4 {
            return Err(err(format!("expected 4 fields, got `{line}`")));
        }
        let year: i32 = f[0].trim().parse().map_err(|_| err(format!("invalid year `{}`", f[0])))?;
        let mut nums = [0.0; 3];
        for (slot, raw) in nums.iter_mut().zip(&f[1..]) {
            *slot = raw.trim().parse().map_err(|_| err(format!("non-numeric value `{raw}`")))?;
        }
        if let Some(&(prev, ..)) = rows.last() {
            if year != prev + 1 {
                return Err(Error::YearGap {
                    path: source.to_string(),
                    row: idx + 1,
                    expected: prev + 1,
                    found: year,
                });
            }
        }
        rows.push((year, nums[0], nums[1], nums[2]));
    }
    if rows.is_empty() {
        return Err(Error::EmptyFile {
            path: source.to_string(),
        });
    }
    Ok(rows)
}
