use serde_json::Value;

use super::{AnnualSeries, Unit};
use crate::error::{Error, Result};

/// Where an indicator series comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndicatorSource {
    /// World Bank API v2 (`[meta, [{date, value, ..}]]`); values are
    /// Atlas-method US$ per capita for `NY.GNP.PCAP.CD`.
    WorldBankAtlas,
    /// Plain JSON array of `{year, value}` objects, in the given unit.
    GenericJson(Unit),
}

impl IndicatorSource {
    fn unit(self) -> Unit {
        match self {
            IndicatorSource::WorldBankAtlas => Unit::UsdPerCapita,
            IndicatorSource::GenericJson(unit) => unit,
        }
    }

    fn url(self, endpoint: &str, indicator: &str, country: &str) -> String {
        match self {
            IndicatorSource::WorldBankAtlas => format!(
                "{}/country/{country}/indicator/{indicator}?format=json&per_page=1000",
                endpoint.trim_end_matches('/')
            ),
            IndicatorSource::GenericJson(_) => endpoint.to_string(),
        }
    }
}

/// Downloads an annual indicator and converts it into a series.
///
/// Leading and trailing nulls are dropped. A null or missing year between two
/// observations is an error. The provenance records the URL and the
/// retrieval date.
pub fn fetch_indicator(
    source: IndicatorSource,
    indicator: &str,
    country: &str,
    endpoint: &str,
) -> Result<AnnualSeries> {
    let url = source.url(endpoint, indicator, country);
    let body = ureq::get(&url)
        .call()
        .map_err(|e| Error::Network(format!("{url}: {e}")))?
        .body_mut()
        .read_to_string()
        .map_err(|e| Error::Network(format!("{url}: {e}")))?;
    let today = chrono::Utc::now().format("%Y-%m-%d");
    let series = parse_payload(source, &body, &format!("{indicator}_{country}"))?;
    Ok(series.with_provenance(format!("{url} (retrieved {today})")))
}

/// Parses a response body into a series named `name`.
pub fn parse_payload(source: IndicatorSource, body: &str, name: &str) -> Result<AnnualSeries> {
    let json: Value =
        serde_json::from_str(body).map_err(|e| Error::Payload(format!("invalid JSON: {e}")))?;
    let rows = match source {
        IndicatorSource::WorldBankAtlas => world_bank_rows(&json)?,
        IndicatorSource::GenericJson(_) => generic_rows(&json)?,
    };
    build_series(rows, name, source.unit())
}

fn world_bank_rows(json: &Value) -> Result<Vec<(i32, Option<f64>)>> {
    let arr = json
        .as_array()
        .ok_or_else(|| Error::Payload("expected a top-level array".into()))?;
    if let Some(msg) = arr.first().and_then(|m| m.get("message")) {
        return Err(Error::Payload(format!("API error: {msg}")));
    }
    let data = arr
        .get(1)
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Payload("expected [meta, rows]".into()))?;
    data.iter()
        .map(|row| {
            let year = match row.get("date") {
                Some(Value::String(s)) => s.parse().ok(),
                Some(Value::Number(n)) => n.as_i64().map(|n| n as i32),
                _ => None,
            }
            .ok_or_else(|| Error::Payload(format!("row without a usable date: {row}")))?;
            Ok((year, value_field(row)?))
        })
        .collect()
}

fn generic_rows(json: &Value) -> Result<Vec<(i32, Option<f64>)>> {
    let arr = json
        .as_array()
        .ok_or_else(|| Error::Payload("expected an array of {year, value}".into()))?;
    arr.iter()
        .map(|row| {
            let year = row
                .get("year")
                .and_then(Value::as_i64)
                .ok_or_else(|| Error::Payload(format!("row without integer year: {row}")))?;
            Ok((year as i32, value_field(row)?))
        })
        .collect()
}

fn value_field(row: &Value) -> Result<Option<f64>> {
    match row.get("value") {
        None | Some(Value::Null) => Ok(None),
        Some(Value::Number(n)) => Ok(n.as_f64()),
        Some(other) => Err(Error::Payload(format!("non-numeric value {other}"))),
    }
}

fn build_series(mut rows: Vec<(i32, Option<f64>)>, name: &str, unit: Unit) -> Result<AnnualSeries> {
    rows.sort_by_key(|r| r.0);
    if let Some(w) = rows.windows(2).find(|w| w[0].0 == w[1].0) {
        return Err(Error::Payload(format!("duplicate year {}", w[0].0)));
    }
    let first = rows.iter().position(|r| r.1.is_some());
    let last = rows.iter().rposition(|r| r.1.is_some());
    let (Some(first), Some(last)) = (first, last) else {
        return Err(Error::Payload("payload has no observations".into()));
    };
    let rows = &rows[first..=last];
    let first_year = rows[0].0;
    let mut values = Vec::with_capacity(rows.len());
    for (i, &(year, value)) in rows.iter().enumerate() {
        let expected = first_year + i as i32;
        if year != expected {
            return Err(Error::InteriorGap(expected));
        }
        values.push(value.ok_or(Error::InteriorGap(year))?);
    }
    AnnualSeries::new(name, unit, first_year, values, "")
}

#[cfg(test)]
mod tests {
    use super::*;

    const GENERIC: IndicatorSource = IndicatorSource::GenericJson(Unit::Usd);

    #[test]
    fn generic_two_points() {
        let s = parse_payload(GENERIC, r#"[{"year":1962,"value":90},{"year":1963,"value":100}]"#, "x")
            .unwrap();
        assert_eq!(s.first_year(), 1962);
        assert_eq!(s.values(), &[90.0, 100.0]);
    }

    #[test]
    fn interior_null_is_an_error() {
        let body = r#"[{"year":1962,"value":90},{"year":1963,"value":null},{"year":1964,"value":1}]"#;
        assert!(matches!(parse_payload(GENERIC, body, "x"), Err(Error::InteriorGap(1963))));
    }

    #[test]
    fn missing_interior_year_is_an_error() {
        let body = r#"[{"year":1962,"value":90},{"year":1964,"value":1}]"#;
        assert!(matches!(parse_payload(GENERIC, body, "x"), Err(Error::InteriorGap(1963))));
    }

    #[test]
    fn end_nulls_are_trimmed() {
        let body = r#"[{"year":1961,"value":null},{"year":1962,"value":90},
                       {"year":1963,"value":100},{"year":1964,"value":null}]"#;
        let s = parse_payload(GENERIC, body, "x").unwrap();
        assert_eq!((s.first_year(), s.last_year()), (1962, 1963));
    }

    #[test]
    fn world_bank_shape_descending_dates() {
        let body = r#"[{"page":1,"pages":1,"per_page":1000,"total":3},
            [{"indicator":{"id":"NY.GNP.PCAP.CD"},"country":{"id":"IN"},"date":"2024","value":null},
             {"indicator":{"id":"NY.GNP.PCAP.CD"},"country":{"id":"IN"},"date":"2023","value":2540},
             {"indicator":{"id":"NY.GNP.PCAP.CD"},"country":{"id":"IN"},"date":"2022","value":2390}]]"#;
        let s = parse_payload(IndicatorSource::WorldBankAtlas, body, "gni").unwrap();
        assert_eq!(s.unit(), Unit::UsdPerCapita);
        assert_eq!((s.first_year(), s.last_year()), (2022, 2023));
        assert_eq!(s.values(), &[2390.0, 2540.0]);
    }

    #[test]
    fn world_bank_error_message() {
        let body = r#"[{"message":[{"id":"120","value":"Invalid value"}]}]"#;
        assert!(matches!(
            parse_payload(IndicatorSource::WorldBankAtlas, body, "gni"),
            Err(Error::Payload(_))
        ));
    }

    #[test]
    fn malformed_payloads() {
        for body in ["{", r#"{"year":1}"#, r#"[{"value":1}]"#, r#"[{"year":1,"value":"x"}]"#, "[]"] {
            assert!(matches!(parse_payload(GENERIC, body, "x"), Err(Error::Payload(_))), "{body}");
        }
    }

    #[test]
    fn unreachable_endpoint_is_network_error() {
        let err = fetch_indicator(GENERIC, "x", "IND", "http://127.0.0.1:9/none").unwrap_err();
        assert!(matches!(err, Error::Network(_)), "{err:?}");
    }
}
