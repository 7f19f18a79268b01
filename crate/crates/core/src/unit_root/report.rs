use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::critical::CriticalValues;
use super::{Deterministic, SignificanceLevel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum TestKind {
    Adf,
    Pp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RejectFlags {
    pub one: bool,
    pub five: bool,
    pub ten: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnitRootReport {
    pub test: TestKind,
    pub deterministic: Deterministic,
    pub lags_or_bandwidth: usize,
    /// Observations in the test regression; the sample size used for the
    /// critical values.
    pub nobs: usize,
    /// Estimated autoregressive root.
    pub rho_hat: f64,
    pub z_t: f64,
    pub z_rho: Option<f64>,
    /// MacKinnon approximate p-value of Z(t).
    pub p_value: f64,
    pub critical: CriticalValues,
    /// Critical values for Z(rho), when reported.
    pub rho_critical: Option<CriticalValues>,
    pub reject_at: RejectFlags,
}

impl UnitRootReport {
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn new(
        test: TestKind,
        deterministic: Deterministic,
        lags_or_bandwidth: usize,
        nobs: usize,
        rho_hat: f64,
        z_t: f64,
        z_rho: Option<f64>,
        p_value: f64,
        critical: CriticalValues,
        rho_critical: Option<CriticalValues>,
    ) -> Self {
        let reject_at = RejectFlags {
            one: z_t < critical.cv1,
            five: z_t < critical.cv5,
            ten: z_t < critical.cv10,
        };
        Self {
            test,
            deterministic,
            lags_or_bandwidth,
            nobs,
            rho_hat,
            z_t,
            z_rho,
            p_value,
            critical,
            rho_critical,
            reject_at,
        }
    }

    pub fn rejects(&self, level: SignificanceLevel) -> bool {
        match level {
            SignificanceLevel::One => self.reject_at.one,
            SignificanceLevel::Five => self.reject_at.five,
            SignificanceLevel::Ten => self.reject_at.ten,
        }
    }
}

/// Footnote explaining the star marks, as printed under the tables.
pub const STAR_NOTE: &str = "Note: *p<0.01, **p<0.05, ***p < 0.001";

/// Stars per [`STAR_NOTE`]: `***` below 0.001, `*` below 0.01, `**` below 0.05.
pub fn significance_stars(p: f64) -> &'static str {
    if p < 0.001 {
        "***"
    } else if p < 0.01 {
        "*"
    } else if p < 0.05 {
        "**"
    } else {
        ""
    }
}

/// Markdown table with one block per `(variable, report)`: Z(t), p-value and
/// the three critical values, plus a Z(rho) row for Phillips-Perron reports.
pub fn render_markdown(rows: &[(String, UnitRootReport)]) -> String {
    let mut out = String::from(
        "| Variable | Statistic | Value | P-Value | 1% Critical Value | 5% Critical Value | 10% Critical Value |\n\
         |---|---|---:|---:|---:|---:|---:|\n",
    );
    for (name, r) in rows {
        let stars = significance_stars(r.p_value);
        if let (Some(z_rho), Some(cv)) = (r.z_rho, r.rho_critical) {
            let _ = writeln!(
                out,
                "| {name} | Z(rho) | {z_rho:.3}{stars} | {:.4} | {:.3} | {:.3} | {:.3} |",
                r.p_value, cv.cv1, cv.cv5, cv.cv10
            );
            let _ = writeln!(
                out,
                "|  | Z(t) | {:.3}{stars} |  | {:.3} | {:.3} | {:.3} |",
                r.z_t, r.critical.cv1, r.critical.cv5, r.critical.cv10
            );
        } else {
            let _ = writeln!(
                out,
                "| {name} | Z(t) | {:.3}{stars} | {:.4} | {:.3} | {:.3} | {:.3} |",
                r.z_t, r.p_value, r.critical.cv1, r.critical.cv5, r.critical.cv10
            );
        }
    }
    out.push('\n');
    out.push_str(STAR_NOTE);
    out.push('\n');
    out
}
