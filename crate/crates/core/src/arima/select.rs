use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::fit::{fit_with, FitOptions};
use super::ArimaOrder;
use crate::error::{Error, Result};
use crate::series::AnnualSeries;
use crate::unit_root::{integration_order, Deterministic, SignificanceLevel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridBounds {
    pub p_max: usize,
    pub d_max: usize,
    pub q_max: usize,
}

impl GridBounds {
    pub fn new(p_max: usize, d_max: usize, q_max: usize) -> Result<Self> {
        ArimaOrder::new(p_max, d_max, q_max)?;
        Ok(Self { p_max, d_max, q_max })
    }

    pub fn orders(&self) -> Vec<ArimaOrder> {
        let mut out = Vec::new();
        for p in 0..=self.p_max {
            for d in 0..=self.d_max {
                for q in 0..=self.q_max {
                    out.push(ArimaOrder { p, d, q });
                }
            }
        }
        out
    }
}

/// Whether candidate fits carry a drift/intercept term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DriftPolicy {
    Off,
    On,
    /// Intercept only for `d = 0`; differenced models run driftless.
    #[default]
    WhenUndifferenced,
}

impl DriftPolicy {
    pub fn drift_for(self, d: usize) -> bool {
        match self {
            DriftPolicy::Off => false,
            DriftPolicy::On => true,
            DriftPolicy::WhenUndifferenced => d == 0,
        }
    }
}

impl std::str::FromStr for DriftPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "off" | "none" => Ok(DriftPolicy::Off),
            "on" => Ok(DriftPolicy::On),
            "when-undifferenced" | "auto" => Ok(DriftPolicy::WhenUndifferenced),
            other => Err(Error::Parameter(format!("unknown drift policy `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "message")]
pub enum FitStatus {
    Converged,
    /// The optimizer stopped at its iteration limit; the criteria are still
    /// reported.
    NotConverged,
    /// Zero innovation variance.
    Degenerate,
    Failed(String),
}

impl FitStatus {
    pub fn label(&self) -> &str {
        match self {
            FitStatus::Converged => "ok",
            FitStatus::NotConverged => "not-converged",
            FitStatus::Degenerate => "degenerate",
            FitStatus::Failed(_) => "failed",
        }
    }

    pub fn is_usable(&self) -> bool {
        matches!(self, FitStatus::Converged | FitStatus::NotConverged)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Candidate {
    pub order: ArimaOrder,
    pub drift: bool,
    pub aic: f64,
    pub bic: f64,
    pub k: usize,
    pub status: FitStatus,
}

impl Candidate {
    fn evaluate(series: &AnnualSeries, order: ArimaOrder, drift: bool, options: &FitOptions) -> Self {
        let k = order.p + order.q + usize::from(drift) + 1;
        match fit_with(series, order, drift, options) {
            Ok(f) => {
                let status = if f.degenerate {
                    FitStatus::Degenerate
                } else if f.converged {
                    FitStatus::Converged
                } else {
                    FitStatus::NotConverged
                };
                Candidate { order, drift, aic: f.aic, bic: f.bic, k, status }
            }
            Err(e) => Candidate {
                order,
                drift,
                aic: f64::NAN,
                bic: f64::NAN,
                k,
                status: FitStatus::Failed(e.to_string()),
            },
        }
    }

    /// Usable fits first, then AIC, parameter count, BIC, order.
    fn rank(&self, other: &Self) -> Ordering {
        other
            .status
            .is_usable()
            .cmp(&self.status.is_usable())
            .then_with(|| self.aic.total_cmp(&other.aic))
            .then_with(|| self.k.cmp(&other.k))
            .then_with(|| self.bic.total_cmp(&other.bic))
            .then_with(|| self.order.cmp(&other.order))
            .then_with(|| self.drift.cmp(&other.drift))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridResult {
    /// Ascending by AIC, unusable fits last.
    pub candidates: Vec<Candidate>,
    pub best_aic: ArimaOrder,
    pub best_bic: ArimaOrder,
}

impl GridResult {
    pub fn candidate(&self, order: ArimaOrder) -> Option<&Candidate> {
        self.candidates.iter().find(|c| c.order == order)
    }

    pub fn best(&self) -> &Candidate {
        &self.candidates[0]
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("p,d,q,aic,bic,status\n");
        for c in &self.candidates {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                c.order.p,
                c.order.d,
                c.order.q,
                c.aic,
                c.bic,
                c.status.label()
            );
        }
        out
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::from("| Model | AIC | BIC | Status |\n|---|---:|---:|---|\n");
        for c in &self.candidates {
            let _ = writeln!(out, "| {} | {:.4} | {:.4} | {} |", c.order, c.aic, c.bic, c.status.label());
        }
        out
    }
}

/// Fits the given `(order, drift)` pairs in parallel and ranks them. The
/// result does not depend on the input order.
pub fn evaluate_candidates(
    series: &AnnualSeries,
    specs: &[(ArimaOrder, bool)],
    options: &FitOptions,
) -> Result<GridResult> {
    let unique: BTreeSet<(ArimaOrder, bool)> = specs.iter().copied().collect();
    if unique.is_empty() {
        return Err(Error::Parameter("empty candidate set".into()));
    }
    let unique: Vec<_> = unique.into_iter().collect();
    let mut candidates: Vec<Candidate> = unique
        .par_iter()
        .map(|&(order, drift)| Candidate::evaluate(series, order, drift, options))
        .collect();
    candidates.sort_by(Candidate::rank);
    let best_aic = candidates[0].order;
    let best_bic = candidates
        .iter()
        .min_by(|a, b| {
            b.status
                .is_usable()
                .cmp(&a.status.is_usable())
                .then_with(|| a.bic.total_cmp(&b.bic))
                .then_with(|| a.k.cmp(&b.k))
                .then_with(|| a.order.cmp(&b.order))
        })
        .map(|c| c.order)
        .expect("non-empty");
    Ok(GridResult { candidates, best_aic, best_bic })
}

/// Every order in `0..=p_max × 0..=d_max × 0..=q_max`.
pub fn grid_search(
    series: &AnnualSeries,
    bounds: GridBounds,
    drift: DriftPolicy,
    options: &FitOptions,
) -> Result<GridResult> {
    let bounds = GridBounds::new(bounds.p_max, bounds.d_max, bounds.q_max)?;
    let specs: Vec<_> = bounds.orders().into_iter().map(|o| (o, drift.drift_for(o.d))).collect();
    evaluate_candidates(series, &specs, options)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AutoSelection {
    pub order: ArimaOrder,
    pub drift: bool,
    pub aic: f64,
    /// Every candidate fitted during the search, keyed by `(order, drift)`.
    pub visited: Vec<Candidate>,
}

/// Picks `d` by repeated ADF tests (5%, constant, no lags), then walks the
/// `(p, q, drift)` space from the four standard starting models towards
/// the lowest AIC.
pub fn auto_select(series: &AnnualSeries, options: &FitOptions) -> Result<AutoSelection> {
    if series.len() < 10 {
        return Err(Error::InsufficientData(format!(
            "order selection needs at least 10 observations, got {}",
            series.len()
        )));
    }
    let d = integration_order(series, ArimaOrder::MAX_D, Deterministic::Constant, SignificanceLevel::Five, 0)?;
    let drift0 = d <= 1;
    let mut visited: BTreeMap<(ArimaOrder, bool), Candidate> = BTreeMap::new();

    let evaluate = |specs: Vec<(ArimaOrder, bool)>, visited: &mut BTreeMap<_, Candidate>| {
        let fresh: Vec<_> = specs.into_iter().filter(|s| !visited.contains_key(s)).collect();
        let fitted: Vec<Candidate> = fresh
            .par_iter()
            .map(|&(o, dr)| Candidate::evaluate(series, o, dr, options))
            .collect();
        for c in fitted {
            visited.insert((c.order, c.drift), c);
        }
    };

    let starts: Vec<_> = [(0, 0), (1, 0), (0, 1), (1, 1)]
        .into_iter()
        .map(|(p, q)| (ArimaOrder { p, d, q }, drift0))
        .collect();
    evaluate(starts.clone(), &mut visited);
    let mut current = best_of(starts.iter().filter_map(|s| visited.get(s)))
        .ok_or_else(|| Error::NonConvergence("no starting model could be fitted".into()))?
        .clone();

    loop {
        let o = current.order;
        let mut neighbours = Vec::new();
        for (dp, dq) in [(-1i32, 0i32), (1, 0), (0, -1), (0, 1)] {
            let p = o.p as i32 + dp;
            let q = o.q as i32 + dq;
            if p < 0 || q < 0 || p as usize > ArimaOrder::MAX_P || q as usize > ArimaOrder::MAX_Q {
                continue;
            }
            neighbours.push((ArimaOrder { p: p as usize, d, q: q as usize }, current.drift));
        }
        if d < 2 {
            neighbours.push((o, !current.drift));
        }
        evaluate(neighbours.clone(), &mut visited);
        let best = best_of(neighbours.iter().filter_map(|s| visited.get(s))).cloned();
        match best {
            Some(b) if b.aic < current.aic => current = b,
            _ => break,
        }
    }

    let mut visited: Vec<Candidate> = visited.into_values().collect();
    visited.sort_by(Candidate::rank);
    Ok(AutoSelection {
        order: current.order,
        drift: current.drift,
        aic: current.aic,
        visited,
    })
}

fn best_of<'a>(it: impl Iterator<Item = &'a Candidate>) -> Option<&'a Candidate> {
    it.filter(|c| c.status.is_usable()).min_by(|a, b| a.rank(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arima::Method;
    use crate::series::{Catalog, Unit};
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::{Distribution, StandardNormal};

    fn noise(seed: u64, n: usize) -> Vec<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n).map(|_| StandardNormal.sample(&mut rng)).collect()
    }

    fn series(values: Vec<f64>) -> AnnualSeries {
        AnnualSeries::new("x", Unit::Usd, 1500, values, "").unwrap()
    }

    #[test]
    fn gdp_subperiod_grid_prefers_ima() {
        let gdp = Catalog::bundled().series("gdp_rs_crore_1991_2025").unwrap();
        let g = grid_search(&gdp, GridBounds::new(1, 2, 1).unwrap(), DriftPolicy::WhenUndifferenced, &FitOptions::default())
            .unwrap();
        assert_eq!(g.best_aic, ArimaOrder { p: 0, d: 2, q: 1 });
        let c = g.candidate(ArimaOrder { p: 0, d: 2, q: 0 }).unwrap();
        assert!((c.aic - 989.6011).abs() < 0.5, "{}", c.aic);
        assert!((g.best().aic - 984.4337).abs() < 2.0, "{}", g.best().aic);
        assert_eq!(g.candidates.len(), 12);
        for w in g.candidates.windows(2) {
            if w[1].status.is_usable() {
                assert!(w[0].aic <= w[1].aic);
            }
        }
    }

    #[test]
    fn single_candidate_lattice() {
        let s = series(noise(1, 40));
        let g = grid_search(&s, GridBounds::new(0, 0, 0).unwrap(), DriftPolicy::Off, &FitOptions::default()).unwrap();
        assert_eq!(g.candidates.len(), 1);
        assert_eq!(g.best_aic, ArimaOrder { p: 0, d: 0, q: 0 });
        assert_eq!(g.best_bic, g.best_aic);
    }

    #[test]
    fn order_of_evaluation_does_not_matter() {
        let s = series(noise(2, 60).iter().scan(0.0, |a, e| { *a += e; Some(*a) }).collect());
        let mut specs: Vec<_> = GridBounds::new(2, 1, 2).unwrap().orders().into_iter().map(|o| (o, o.d == 0)).collect();
        let opts = FitOptions::with_method(Method::Css);
        let a = evaluate_candidates(&s, &specs, &opts).unwrap();
        specs.shuffle(&mut ChaCha8Rng::seed_from_u64(9));
        let b = evaluate_candidates(&s, &specs, &opts).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn failures_sort_last_and_are_flagged() {
        let s = series(noise(3, 8));
        let g = grid_search(&s, GridBounds::new(2, 0, 2).unwrap(), DriftPolicy::Off, &FitOptions::default()).unwrap();
        let last = g.candidates.last().unwrap();
        assert_eq!(last.status.label(), "failed");
        assert!(g.best().status.is_usable());
        assert!(g.to_csv().lines().any(|l| l.ends_with(",failed")));
    }

    #[test]
    fn csv_header() {
        let s = series(noise(4, 30));
        let g = grid_search(&s, GridBounds::new(0, 1, 0).unwrap(), DriftPolicy::Off, &FitOptions::default()).unwrap();
        let csv = g.to_csv();
        assert!(csv.starts_with("p,d,q,aic,bic,status\n"));
        assert_eq!(csv.lines().count(), 3);
    }

    #[test]
    fn exchange_rate_is_a_random_walk() {
        let fx = Catalog::bundled().series("exchange_rate_1971_2024").unwrap();
        let a = auto_select(&fx, &FitOptions::default()).unwrap();
        assert_eq!(a.order, ArimaOrder { p: 0, d: 1, q: 0 });
    }

    #[test]
    fn white_noise_selects_zero_order() {
        let a = auto_select(&series(noise(500, 500)), &FitOptions::default()).unwrap();
        assert_eq!(a.order, ArimaOrder { p: 0, d: 0, q: 0 });
    }

    #[test]
    fn integrated_noise_selects_first_difference() {
        let rw: Vec<f64> = noise(77, 300).iter().scan(0.0, |a, e| { *a += e; Some(*a) }).collect();
        let a = auto_select(&series(rw), &FitOptions::default()).unwrap();
        assert_eq!(a.order.d, 1);
    }

    #[test]
    fn too_short_for_selection() {
        assert!(matches!(auto_select(&series(noise(5, 8)), &FitOptions::default()), Err(Error::InsufficientData(_))));
    }
}
