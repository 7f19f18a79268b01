use crate::error::{Error, Result};
use crate::series::AnnualSeries;

/// `d`-th order difference of raw values. Returns an empty vector when
/// `d >= x.len()`.
pub fn difference_values(x: &[f64], d: usize) -> Vec<f64> {
    let mut out = x.to_vec();
    for _ in 0..d {
        if out.len() <= 1 {
            return Vec::new();
        }
        out = out.windows(2).map(|w| w[1] - w[0]).collect();
    }
    out
}

/// Differences a series `order` times; the first year advances by `order`.
pub fn difference(series: &AnnualSeries, order: usize) -> Result<AnnualSeries> {
    if order >= series.len() {
        return Err(Error::InsufficientData(format!(
            "cannot difference {} observations {order} times",
            series.len()
        )));
    }
    if order == 0 {
        return Ok(series.clone());
    }
    let values = difference_values(series.values(), order);
    let out = AnnualSeries::new(
        series.name(),
        series.unit(),
        series.first_year() + order as i32,
        values,
        series.provenance(),
    )?;
    Ok(out.with_diff_order(series.diff_order() + order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{Catalog, Unit};
    use proptest::prelude::*;

    #[test]
    fn order_zero_is_identity() {
        let fx = Catalog::bundled().series("exchange_rate_1971_2024").unwrap();
        assert_eq!(difference(&fx, 0).unwrap(), fx);
    }

    #[test]
    fn first_difference_of_exchange_rate() {
        let fx = Catalog::bundled().series("exchange_rate_1971_2024").unwrap();
        let d = difference(&fx, 1).unwrap();
        assert_eq!(d.first_year(), 1972);
        assert_eq!(d.len(), fx.len() - 1);
        assert!((d.values()[0] - (7.4731 - 7.5578)).abs() < 1e-12);
        assert!((d.values()[0] + 0.0847).abs() < 1e-12);
        assert_eq!(d.unit_label(), "Δ^1 rupees-per-usd");
    }

    #[test]
    fn too_short_series() {
        let s = AnnualSeries::new("x", Unit::Usd, 2000, vec![1.0, 2.0], "").unwrap();
        assert!(matches!(difference(&s, 2), Err(Error::InsufficientData(_))));
    }

    proptest! {
        #[test]
        fn repeated_first_differences_compose(values in prop::collection::vec(-1e6f64..1e6, 3..60)) {
            let s = AnnualSeries::new("x", Unit::Usd, 1950, values, "").unwrap();
            let twice = difference(&difference(&s, 1).unwrap(), 1).unwrap();
            let direct = difference(&s, 2).unwrap();
            prop_assert_eq!(twice.first_year(), direct.first_year());
            prop_assert_eq!(twice.diff_order(), 2);
            for (a, b) in twice.values().iter().zip(direct.values()) {
                prop_assert_eq!(a, b);
            }
        }
    }
}
