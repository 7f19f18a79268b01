use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use boxjen::arima::{
    auto_select, fit_with, forecast_with, grid_search, ArimaFit, ArimaOrder, DriftPolicy, FitOptions, GridBounds,
    IntervalVariance, Method,
};
use boxjen::reproduce::{all_passed, pinned_checks};
use boxjen::scenario::{run_scenario, IndicatorSpec, MacroScenario, ModelChoice};
use boxjen::series::{fetch_indicator, load_csv, parse_payload, to_csv_string, IndicatorSource};
use boxjen::stats::{correlogram, default_max_lag, difference};
use boxjen::unit_root::{
    adf_with_source, pp_with_source, render_markdown, Bandwidth, CriticalSource, TestKind, UnitRootReport,
};
use boxjen::{AnnualSeries, Catalog, Deterministic, Unit};

use crate::config::RunConfig;
use crate::plot::{emit_plot, PlotData, PlotKind};
use crate::report::{Body, ReportDocument};

pub enum CliError {
    /// Bad flags or configuration values; exit status 2.
    Usage(String),
    /// Input, estimation or output failure; exit status 1.
    Data(String),
}

impl From<boxjen::Error> for CliError {
    fn from(e: boxjen::Error) -> Self {
        CliError::Data(e.to_string())
    }
}

type Out<T> = Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn parse<T: FromStr>(key: &str, value: Option<&str>, default: T) -> Out<T>
where
    T::Err: std::fmt::Display,
{
    match value {
        None => Ok(default),
        Some(v) => v.parse().map_err(|e| usage(format!("--{}: {e}", key.replace('_', "-")))),
    }
}

fn window(key: &str, value: &str) -> Out<(i32, i32)> {
    let bad = || usage(format!("--{key}: expected START:END, got `{value}`"));
    let (a, b) = value.split_once(':').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

/// Resolves `catalog:<key>` against the catalog (honouring the data
/// directory override) or reads a CSV path.
pub fn load_data(reference: &str, unit: Option<&str>) -> Out<AnnualSeries> {
    if let Some(key) = reference.strip_prefix("catalog:") {
        return Ok(Catalog::from_env()?.series(key)?);
    }
    let unit: Unit = parse("unit", unit, Unit::Usd)?;
    Ok(load_csv(reference, unit)?)
}

fn input_series(cfg: &RunConfig) -> Out<AnnualSeries> {
    let reference = cfg.data.as_deref().ok_or_else(|| usage("--data is required"))?;
    let s = load_data(reference, cfg.unit.as_deref())?;
    if cfg.start.is_none() && cfg.end.is_none() {
        return Ok(s);
    }
    Ok(s.slice(cfg.start.unwrap_or(s.first_year()), cfg.end.unwrap_or(s.last_year()))?)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Format {
    Csv,
    Json,
    Md,
}

impl Format {
    fn ext(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
            Format::Md => "md",
        }
    }
}

/// Where rendered outputs go: files under `--out`, or the first requested
/// format on stdout.
struct Emitter {
    dir: Option<PathBuf>,
    formats: Vec<Format>,
    plot: bool,
}

impl Emitter {
    fn new(cfg: &RunConfig, default: Format) -> Out<Self> {
        let formats = match &cfg.format {
            None => vec![default],
            Some(list) => list
                .iter()
                .map(|f| match f.trim() {
                    "csv" => Ok(Format::Csv),
                    "json" => Ok(Format::Json),
                    "md" | "markdown" => Ok(Format::Md),
                    other => Err(usage(format!("--format: unknown format `{other}`"))),
                })
                .collect::<Out<Vec<_>>>()?,
        };
        if formats.is_empty() {
            return Err(usage("--format: empty list"));
        }
        let plot = cfg.plot.unwrap_or(false);
        if plot && cfg.out.is_none() {
            return Err(usage("--plot needs --out"));
        }
        let dir = cfg.out.as_ref().map(PathBuf::from);
        if let Some(d) = &dir {
            std::fs::create_dir_all(d).map_err(|e| CliError::Data(format!("{}: {e}", d.display())))?;
        }
        Ok(Self { dir, formats, plot })
    }

    fn write(&self, name: &str, text: &str) -> Out<PathBuf> {
        let dir = self.dir.as_ref().expect("only called with an output directory");
        let path = dir.join(name);
        std::fs::write(&path, text).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
        eprintln!("wrote {}", path.display());
        Ok(path)
    }

    fn emit(&self, stem: &str, render: impl Fn(Format) -> String) -> Out<()> {
        match &self.dir {
            None => print!("{}", render(self.formats[0])),
            Some(_) => {
                for &f in &self.formats {
                    self.write(&format!("{stem}.{}", f.ext()), &render(f))?;
                }
            }
        }
        Ok(())
    }

    /// Writes a chart when plotting is on; returns its file name for the
    /// report.
    fn plot(&self, name: &str, data: &PlotData<'_>, kind: PlotKind) -> Out<Option<String>> {
        if !self.plot {
            return Ok(None);
        }
        let path = self.dir.as_ref().expect("checked in new").join(name);
        emit_plot(data, kind, &path).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
        eprintln!("wrote {}", path.display());
        Ok(Some(name.to_string()))
    }
}

fn json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn series_section(doc: &mut ReportDocument, emitter: &Emitter, s: &AnnualSeries) -> Out<()> {
    if let Some(p) = emitter.plot(&format!("{}.svg", s.name()), &PlotData::Series(s), PlotKind::Line)? {
        doc.push(format!("{} ({})", s.name(), s.unit_label()), "series::AnnualSeries", Body::Plot(p));
    }
    Ok(())
}

pub fn ingest(cfg: &RunConfig) -> Out<()> {
    let unit: Unit = parse("unit", cfg.unit.as_deref(), Unit::Usd)?;
    let source = match cfg.source.as_deref().unwrap_or("worldbank") {
        "worldbank" => IndicatorSource::WorldBankAtlas,
        "json" => IndicatorSource::GenericJson(unit),
        other => return Err(usage(format!("--source: expected worldbank or json, got `{other}`"))),
    };
    let indicator = cfg.indicator.as_deref().unwrap_or("NY.GNP.PCAP.CD");
    let country = cfg.country.as_deref().unwrap_or("IND");
    let mut series = if let Some(path) = &cfg.input {
        let body = std::fs::read_to_string(path).map_err(|e| CliError::Data(format!("{path}: {e}")))?;
        parse_payload(source, &body, &format!("{indicator}_{country}"))?.with_provenance(path.clone())
    } else if cfg.data.is_some() {
        input_series(cfg)?
    } else {
        let endpoint = cfg.endpoint.as_deref().unwrap_or("https://api.worldbank.org/v2");
        if matches!(source, IndicatorSource::GenericJson(_)) && cfg.endpoint.is_none() {
            return Err(usage("--source json needs --endpoint or --input"));
        }
        fetch_indicator(source, indicator, country, endpoint)?
    };
    if cfg.data.is_none() && (cfg.start.is_some() || cfg.end.is_some()) {
        series = series.slice(cfg.start.unwrap_or(series.first_year()), cfg.end.unwrap_or(series.last_year()))?;
    }
    eprintln!("{}: {}-{} ({})", series.name(), series.first_year(), series.last_year(), series.provenance());
    if let Some(path) = &cfg.output {
        std::fs::write(path, to_csv_string(&series)).map_err(|e| CliError::Data(format!("{path}: {e}")))?;
        eprintln!("wrote {path}");
        if cfg.out.is_none() {
            return Ok(());
        }
    }
    let emitter = Emitter::new(cfg, Format::Csv)?;
    let mut doc = ReportDocument::new(format!("Series {}", series.name()));
    let table: String = std::iter::once("| Year | Value |\n|---:|---:|\n".to_string())
        .chain(series.iter().map(|(y, v)| format!("| {y} | {v:.4} |\n")))
        .collect();
    doc.push(series.name(), "series::fetch_indicator", Body::Markdown(table));
    series_section(&mut doc, &emitter, &series)?;
    emitter.emit(series.name(), |f| match f {
        Format::Csv => to_csv_string(&series),
        Format::Json => json(&series),
        Format::Md => doc.render(),
    })
}

fn unit_root_reports(cfg: &RunConfig, s: &AnnualSeries) -> Out<Vec<(String, UnitRootReport)>> {
    let det: Deterministic = parse("det", cfg.det.as_deref(), Deterministic::Constant)?;
    let lags = cfg.lags.unwrap_or(0);
    let bandwidth = match cfg.bandwidth.as_deref() {
        None | Some("auto") => Bandwidth::Auto,
        Some(v) => Bandwidth::Fixed(v.parse().map_err(|_| usage(format!("--bandwidth: expected auto or an integer, got `{v}`")))?),
    };
    let critical = match cfg.critical.as_deref() {
        None | Some("fuller") => CriticalSource::FullerTable,
        Some("mackinnon") => CriticalSource::MacKinnon2010,
        Some(other) => return Err(usage(format!("--critical: expected fuller or mackinnon, got `{other}`"))),
    };
    let (adf, pp) = match cfg.test.as_deref().unwrap_or("adf") {
        "adf" => (true, false),
        "pp" => (false, true),
        "both" => (true, true),
        other => return Err(usage(format!("--test: expected adf, pp or both, got `{other}`"))),
    };
    let d = cfg.diff.unwrap_or(0);
    let x = difference(s, d)?;
    let name = if d == 0 { s.name().to_string() } else { format!("D{d}.{}", s.name()) };
    let mut out = Vec::new();
    if adf {
        out.push((name.clone(), adf_with_source(&x, det, lags, critical)?));
    }
    if pp {
        out.push((name, pp_with_source(&x, det, bandwidth, critical)?));
    }
    Ok(out)
}

fn unit_root_csv(rows: &[(String, UnitRootReport)]) -> String {
    let mut out = String::from("variable,test,deterministic,lags,nobs,z_t,z_rho,p_value,cv1,cv5,cv10\n");
    for (name, r) in rows {
        let test = match r.test {
            TestKind::Adf => "adf",
            TestKind::Pp => "pp",
        };
        let z_rho = r.z_rho.map_or(String::new(), |v| v.to_string());
        let _ = writeln!(
            out,
            "{name},{test},{},{},{},{},{z_rho},{},{},{},{}",
            r.deterministic.as_str(),
            r.lags_or_bandwidth,
            r.nobs,
            r.z_t,
            r.p_value,
            r.critical.cv1,
            r.critical.cv5,
            r.critical.cv10
        );
    }
    out
}

pub fn unitroot(cfg: &RunConfig) -> Out<()> {
    let s = input_series(cfg)?;
    let emitter = Emitter::new(cfg, Format::Md)?;
    let rows = unit_root_reports(cfg, &s)?;
    let mut doc = ReportDocument::new(format!("Unit-root tests: {}", s.name()));
    doc.push("Results", "unit_root::adf_test / unit_root::pp_test", Body::Markdown(render_markdown(&rows)));
    series_section(&mut doc, &emitter, &s)?;
    emitter.emit(&format!("unitroot_{}", s.name()), |f| match f {
        Format::Csv => unit_root_csv(&rows),
        Format::Json => json(&rows),
        Format::Md => doc.render(),
    })
}

pub fn correlogram_cmd(cfg: &RunConfig) -> Out<()> {
    let s = difference(&input_series(cfg)?, cfg.diff.unwrap_or(0))?;
    let emitter = Emitter::new(cfg, Format::Csv)?;
    let max_lag = cfg.max_lag.unwrap_or_else(|| default_max_lag(s.len()));
    let c = correlogram(&s, max_lag)?;
    let mut doc = ReportDocument::new(format!("Correlogram: {}", s.name()));
    let mut table = String::from("| Lag | ACF | PACF |\n|---:|---:|---:|\n");
    for k in 0..c.max_lag {
        let _ = writeln!(table, "| {} | {:.4} | {:.4} |", k + 1, c.acf[k + 1], c.pacf[k]);
    }
    let _ = writeln!(table, "\nWhite-noise band: ±{:.4} (n = {})", c.band, c.n);
    doc.push("ACF and PACF", "stats::correlogram", Body::Markdown(table));
    let title = format!("{} ({})", s.name(), s.unit_label());
    if let Some(p) = emitter.plot(&format!("correlogram_{}.svg", s.name()), &PlotData::Correlogram { title: &title, correlogram: &c }, PlotKind::Correlogram)? {
        doc.push("Chart", "stats::correlogram", Body::Plot(p));
    }
    emitter.emit(&format!("correlogram_{}", s.name()), |f| match f {
        Format::Csv => c.to_csv(),
        Format::Json => json(&c),
        Format::Md => doc.render(),
    })
}

fn fit_options(cfg: &RunConfig) -> Out<FitOptions> {
    Ok(FitOptions::with_method(parse("method", cfg.method.as_deref(), Method::ExactMle)?))
}

fn fit_markdown(f: &ArimaFit) -> String {
    let mut md = String::from("| Parameter | Estimate |\n|---|---:|\n");
    for (i, a) in f.ar.iter().enumerate() {
        let _ = writeln!(md, "| AR({}) | {a:.6} |", i + 1);
    }
    for (i, m) in f.ma.iter().enumerate() {
        let _ = writeln!(md, "| MA({}) | {m:.6} |", i + 1);
    }
    if f.drift {
        let _ = writeln!(md, "| {} | {:.6} |", if f.order.d == 0 { "Mean" } else { "Drift" }, f.mu);
    }
    let _ = writeln!(md, "| σ² | {:.6} |\n| Log-likelihood | {:.4} |\n| AIC | {:.4} |\n| BIC | {:.4} |\n| n | {} |", f.sigma2, f.loglik, f.aic, f.bic, f.n_eff);
    if f.degenerate {
        md.push_str("\nZero innovation variance: the fit is exact and intervals collapse.\n");
    }
    md
}

fn fit_csv(f: &ArimaFit) -> String {
    let mut out = String::from("parameter,value\n");
    for (i, a) in f.ar.iter().enumerate() {
        let _ = writeln!(out, "ar{},{a}", i + 1);
    }
    for (i, m) in f.ma.iter().enumerate() {
        let _ = writeln!(out, "ma{},{m}", i + 1);
    }
    let _ = write!(
        out,
        "mu,{}\nsigma2,{}\nloglik,{}\naic,{}\nbic,{}\nn_eff,{}\n",
        f.mu, f.sigma2, f.loglik, f.aic, f.bic, f.n_eff
    );
    out
}

fn order_of(cfg: &RunConfig) -> Out<Option<ArimaOrder>> {
    cfg.order.as_deref().map(|o| o.parse().map_err(|e: boxjen::Error| usage(format!("--order: {e}")))).transpose()
}

pub fn fit_cmd(cfg: &RunConfig) -> Out<()> {
    let s = input_series(cfg)?;
    let order = order_of(cfg)?.ok_or_else(|| usage("--order is required"))?;
    let options = fit_options(cfg)?;
    let emitter = Emitter::new(cfg, Format::Json)?;
    let f = fit_with(&s, order, cfg.drift.unwrap_or(false), &options)?;
    let mut doc = ReportDocument::new(format!("ARIMA{} fit: {}", f.order, s.name()));
    doc.push("Estimates", "arima::fit", Body::Markdown(fit_markdown(&f)));
    series_section(&mut doc, &emitter, &s)?;
    emitter.emit(&format!("fit_{}", s.name()), |fm| match fm {
        Format::Csv => fit_csv(&f),
        Format::Json => json(&f),
        Format::Md => doc.render(),
    })
}

pub fn grid(cfg: &RunConfig) -> Out<()> {
    let s = input_series(cfg)?;
    let bounds = GridBounds::new(cfg.p_max.unwrap_or(3), cfg.d_max.unwrap_or(2), cfg.q_max.unwrap_or(3))
        .map_err(|e| usage(e.to_string()))?;
    let policy: DriftPolicy = parse("drift_policy", cfg.drift_policy.as_deref(), DriftPolicy::WhenUndifferenced)?;
    let options = fit_options(cfg)?;
    let emitter = Emitter::new(cfg, Format::Csv)?;
    let g = grid_search(&s, bounds, policy, &options)?;
    let mut doc = ReportDocument::new(format!("ARIMA models by AIC: {}", s.name()));
    doc.push("Candidates", "arima::grid_search", Body::Markdown(g.to_markdown()));
    doc.push(
        "Selection",
        "arima::grid_search",
        Body::Markdown(format!("Best by AIC: {}\n\nBest by BIC: {}\n", g.best_aic, g.best_bic)),
    );
    emitter.emit(&format!("grid_{}", s.name()), |f| match f {
        Format::Csv => g.to_csv(),
        Format::Json => json(&g),
        Format::Md => doc.render(),
    })
}

pub fn autofit(cfg: &RunConfig) -> Out<()> {
    let s = input_series(cfg)?;
    let options = fit_options(cfg)?;
    let emitter = Emitter::new(cfg, Format::Json)?;
    let a = auto_select(&s, &options)?;
    let mut visited = String::from("| Model | Drift | AIC | BIC | Status |\n|---|---|---:|---:|---|\n");
    let mut csv = String::from("p,d,q,drift,aic,bic,status\n");
    for c in &a.visited {
        let _ = writeln!(visited, "| {} | {} | {:.4} | {:.4} | {} |", c.order, c.drift, c.aic, c.bic, c.status.label());
        let _ = writeln!(csv, "{},{},{},{},{},{},{}", c.order.p, c.order.d, c.order.q, c.drift, c.aic, c.bic, c.status.label());
    }
    let mut doc = ReportDocument::new(format!("Stepwise selection: {}", s.name()));
    doc.push(
        "Selected model",
        "arima::auto_select",
        Body::Markdown(format!("ARIMA{} {} drift, AIC {:.4}\n", a.order, if a.drift { "with" } else { "without" }, a.aic)),
    );
    doc.push("Models visited", "arima::auto_select", Body::Markdown(visited));
    emitter.emit(&format!("autofit_{}", s.name()), |f| match f {
        Format::Csv => csv.clone(),
        Format::Json => json(&a),
        Format::Md => doc.render(),
    })
}

pub fn forecast_cmd(cfg: &RunConfig) -> Out<()> {
    let s = input_series(cfg)?;
    let options = fit_options(cfg)?;
    let horizon = cfg.horizon.ok_or_else(|| usage("--horizon is required"))?;
    let level = cfg.level.unwrap_or(95.0);
    let variance: IntervalVariance = match cfg.interval_variance.as_deref() {
        None | Some("df-corrected") => IntervalVariance::DfCorrected,
        Some("mle") => IntervalVariance::Mle,
        Some(other) => return Err(usage(format!("--interval-variance: expected df-corrected or mle, got `{other}`"))),
    };
    let emitter = Emitter::new(cfg, Format::Csv)?;
    let (order, drift) = match order_of(cfg)? {
        Some(o) => (o, cfg.drift.unwrap_or(false)),
        None => {
            let a = auto_select(&s, &options)?;
            (a.order, cfg.drift.unwrap_or(a.drift))
        }
    };
    let f = fit_with(&s, order, drift, &options)?;
    let t = forecast_with(&f, horizon, level, variance).map_err(|e| match e {
        boxjen::Error::Parameter(m) => usage(m),
        other => other.into(),
    })?;
    let mut doc = ReportDocument::new(format!("Forecast: {}", s.name()));
    doc.push(format!("ARIMA{order} estimates"), "arima::fit", Body::Markdown(fit_markdown(&f)));
    doc.push("Forecast", "arima::forecast", Body::Markdown(t.to_markdown()));
    if let Some(p) = emitter.plot(&format!("forecast_{}.svg", s.name()), &PlotData::Forecast { history: &s, table: &t }, PlotKind::Fanchart)? {
        doc.push("Fan chart", "arima::forecast", Body::Plot(p));
    }
    emitter.emit(&format!("forecast_{}", s.name()), |fm| match fm {
        Format::Csv => t.to_csv(),
        Format::Json => json(&t),
        Format::Md => doc.render(),
    })
}

fn indicator(cfg: &RunConfig, key: &str) -> Out<Option<IndicatorSpec>> {
    let (data, win, order, drift) = match key {
        "gdp" => (&cfg.gdp, &cfg.gdp_window, &cfg.gdp_order, cfg.gdp_drift),
        "fx" => (&cfg.fx, &cfg.fx_window, &cfg.fx_order, cfg.fx_drift),
        "gfd" => (&cfg.gfd, &cfg.gfd_window, &cfg.gfd_order, cfg.gfd_drift),
        _ => (&cfg.gni, &cfg.gni_window, &cfg.gni_order, cfg.gni_drift),
    };
    let Some(data) = data else { return Ok(None) };
    let mut spec = IndicatorSpec::new(load_data(data, cfg.unit.as_deref())?);
    if let Some(w) = win {
        let (a, b) = window(&format!("{key}-window"), w)?;
        spec = spec.window(a, b);
    }
    if let Some(o) = order {
        let o: ArimaOrder = o.parse().map_err(|e: boxjen::Error| usage(format!("--{key}-order: {e}")))?;
        spec = spec.fixed(o, drift.unwrap_or(false));
    } else if drift.is_some() {
        return Err(usage(format!("--{key}-drift needs --{key}-order")));
    }
    Ok(Some(spec))
}

fn apply_overrides(target: &mut Option<IndicatorSpec>, given: Option<IndicatorSpec>, cfg: &RunConfig, key: &str) -> Out<()> {
    if let Some(g) = given {
        *target = Some(g);
        return Ok(());
    }
    // a preset indicator can still take window/order overrides
    let (win, order, drift) = match key {
        "gdp" => (&cfg.gdp_window, &cfg.gdp_order, cfg.gdp_drift),
        "fx" => (&cfg.fx_window, &cfg.fx_order, cfg.fx_drift),
        "gfd" => (&cfg.gfd_window, &cfg.gfd_order, cfg.gfd_drift),
        _ => (&cfg.gni_window, &cfg.gni_order, cfg.gni_drift),
    };
    let Some(spec) = target.as_mut() else {
        if win.is_some() || order.is_some() || drift.is_some() {
            return Err(usage(format!("--{key}-* options need --{key}")));
        }
        return Ok(());
    };
    if let Some(w) = win {
        spec.window = Some(window(&format!("{key}-window"), w)?);
    }
    match (order, drift, spec.model) {
        (Some(o), d, current) => {
            let o: ArimaOrder = o.parse().map_err(|e: boxjen::Error| usage(format!("--{key}-order: {e}")))?;
            let keep = matches!(current, ModelChoice::Fixed { drift: true, .. });
            spec.model = ModelChoice::Fixed { order: o, drift: d.unwrap_or(keep) };
        }
        (None, Some(d), ModelChoice::Fixed { order, .. }) => spec.model = ModelChoice::Fixed { order, drift: d },
        (None, Some(_), ModelChoice::Auto) => return Err(usage(format!("--{key}-drift needs --{key}-order"))),
        (None, None, _) => {}
    }
    Ok(())
}

fn scenario_config(cfg: &RunConfig) -> Out<MacroScenario> {
    let catalog = Catalog::from_env()?;
    let mut sc = match cfg.preset.as_deref() {
        None => MacroScenario::default(),
        Some("pinned-subperiod") => MacroScenario::pinned_subperiod(&catalog)?,
        Some("pinned-entire") => MacroScenario::pinned_entire(&catalog)?,
        Some(other) => return Err(usage(format!("--preset: expected pinned-subperiod or pinned-entire, got `{other}`"))),
    };
    apply_overrides(&mut sc.gdp, indicator(cfg, "gdp")?, cfg, "gdp")?;
    apply_overrides(&mut sc.fx, indicator(cfg, "fx")?, cfg, "fx")?;
    apply_overrides(&mut sc.gfd, indicator(cfg, "gfd")?, cfg, "gfd")?;
    apply_overrides(&mut sc.gni, indicator(cfg, "gni")?, cfg, "gni")?;
    if let Some(y) = cfg.end_year {
        sc.end_year = y;
    }
    if let Some(l) = cfg.level {
        sc.level = if l > 1.0 { l / 100.0 } else { l };
    }
    sc.method = parse("method", cfg.method.as_deref(), sc.method)?;
    sc.growth_base_year = cfg.growth_base_year.or(sc.growth_base_year);
    if sc.gdp.is_none() && sc.fx.is_none() && sc.gfd.is_none() && sc.gni.is_none() {
        return Err(usage("scenario needs --preset or at least one of --gdp, --fx, --gfd, --gni"));
    }
    Ok(sc)
}

fn scenario_csv(r: &boxjen::ScenarioReport) -> String {
    let mut out = String::from("series,year,value\n");
    let derived = [&r.gdp_usd, &r.gfd_ratio];
    let paths = r.indicators.iter().map(|o| (o.indicator.as_str(), &o.path));
    let extra = derived.iter().filter_map(|s| s.as_ref()).map(|s| (s.name(), s));
    for (name, s) in paths.chain(extra) {
        for (y, v) in s.iter() {
            let _ = writeln!(out, "{name},{y},{v}");
        }
    }
    out
}

pub fn scenario(cfg: &RunConfig) -> Out<()> {
    let sc = scenario_config(cfg)?;
    let emitter = Emitter::new(cfg, Format::Md)?;
    let r = run_scenario(&sc)?;
    let mut doc = ReportDocument::new(format!("Scenario to {}", r.end_year));
    doc.push("Scenario", "scenario::run_scenario", Body::Markdown(r.to_markdown().replace("\n## ", "\n### ")));
    for o in &r.indicators {
        let history = o.path.slice(o.window.0, o.window.1)?.with_name(o.indicator.clone());
        let name = format!("scenario_{}.svg", o.indicator);
        if let Some(p) = emitter.plot(&name, &PlotData::Forecast { history: &history, table: &o.forecast }, PlotKind::Fanchart)? {
            doc.push(format!("{} fan chart", o.indicator), "arima::forecast", Body::Plot(p));
        }
    }
    if let Some(usd) = &r.gdp_usd {
        if let Some(p) = emitter.plot("scenario_gdp_usd.svg", &PlotData::Series(usd), PlotKind::Line)? {
            doc.push("GDP in US$ crore", "scenario::convert_currency", Body::Plot(p));
        }
    }
    emitter.emit("scenario", |f| match f {
        Format::Csv => scenario_csv(&r),
        Format::Json => r.to_json() + "\n",
        Format::Md => doc.render(),
    })
}

/// Runs every pinned check; `Ok(false)` when any fails.
pub fn reproduce(cfg: &RunConfig) -> Out<bool> {
    let catalog = Catalog::from_env()?;
    let checks = pinned_checks(&catalog);
    for c in &checks {
        println!("{c}");
    }
    let passed = all_passed(&checks);
    println!("{} of {} checks passed", checks.iter().filter(|c| c.passed).count(), checks.len());
    if cfg.out.is_none() {
        return Ok(passed);
    }
    let plot_cfg = RunConfig { plot: Some(cfg.plot.unwrap_or(true)), ..cfg.clone() };
    let emitter = Emitter::new(&plot_cfg, Format::Md)?;
    let mut doc = ReportDocument::new("Reproduction from bundled data");

    let mut table = String::from("| Result | Criterion | Check | Value | Published | Tolerance |\n|---|---:|---|---:|---:|---|\n");
    let mut csv = String::from("criterion,name,actual,expected,tolerance,passed\n");
    for c in &checks {
        let _ = writeln!(table, "| {} | {} | {} | {} | {} | {} |", if c.passed { "PASS" } else { "FAIL" }, c.criterion, c.name, c.actual, c.expected, c.tolerance);
        let _ = writeln!(csv, "{},\"{}\",\"{}\",{},\"{}\",{}", c.criterion, c.name, c.actual, c.expected, c.tolerance, c.passed);
    }
    doc.push("Checks", "reproduce::pinned_checks", Body::Markdown(table));
    emitter.write("checks.csv", &csv)?;
    emitter.write("checks.json", &json(&checks))?;

    let fx = catalog.series("exchange_rate_1971_2024")?;
    let gdp = catalog.series("gdp_rs_crore_1991_2025")?;
    let mut rows = Vec::new();
    for d in 0..=1 {
        let x = difference(&fx, d)?;
        let name = if d == 0 { "Exchange rate".to_string() } else { "D.Exchange rate".to_string() };
        rows.push((name.clone(), boxjen::unit_root::adf_test(&x, Deterministic::Constant, 0)?));
        rows.push((name, boxjen::unit_root::pp_test(&x, Deterministic::Constant, Bandwidth::Auto)?));
    }
    doc.push("Exchange-rate unit-root tests", "unit_root::adf_test / unit_root::pp_test", Body::Markdown(render_markdown(&rows)));
    let c = correlogram(&fx, default_max_lag(fx.len()))?;
    if let Some(p) = emitter.plot("correlogram_exchange_rate.svg", &PlotData::Correlogram { title: "Exchange rate", correlogram: &c }, PlotKind::Correlogram)? {
        doc.push("Exchange-rate correlogram", "stats::correlogram", Body::Plot(p));
    }

    let g = grid_search(&gdp, GridBounds::new(1, 2, 1)?, DriftPolicy::WhenUndifferenced, &FitOptions::default())?;
    emitter.write("grid_gdp_1991_2025.csv", &g.to_csv())?;
    doc.push("GDP 1991-2025 models", "arima::grid_search", Body::Markdown(g.to_markdown()));

    let rw = ArimaOrder::new(0, 1, 0)?;
    for (label, window, stem) in [("1971-2024", (1971, 2024), "forecast_exchange_rate_entire"), ("1991-2024", (1991, 2024), "forecast_exchange_rate_sub")] {
        let s = fx.slice(window.0, window.1)?;
        let t = forecast_with(&fit_with(&s, rw, true, &FitOptions::default())?, 2047 - window.1 as usize, 0.95, IntervalVariance::DfCorrected)?;
        emitter.write(&format!("{stem}.csv"), &t.to_csv())?;
        doc.push(format!("Exchange-rate forecast, {label} sample"), "arima::forecast", Body::Markdown(t.to_markdown()));
        if let Some(p) = emitter.plot(&format!("{stem}.svg"), &PlotData::Forecast { history: &s, table: &t }, PlotKind::Fanchart)? {
            doc.push(format!("Exchange-rate fan chart, {label}"), "arima::forecast", Body::Plot(p));
        }
    }
    let t = forecast_with(&fit_with(&gdp, ArimaOrder::new(0, 2, 1)?, false, &FitOptions::default())?, 22, 0.95, IntervalVariance::DfCorrected)?;
    emitter.write("forecast_gdp_1991_2025.csv", &t.to_csv())?;
    doc.push("GDP forecast, 1991-2025 sample", "arima::forecast", Body::Markdown(t.to_markdown()));
    if let Some(p) = emitter.plot("forecast_gdp_1991_2025.svg", &PlotData::Forecast { history: &gdp, table: &t }, PlotKind::Fanchart)? {
        doc.push("GDP fan chart", "arima::forecast", Body::Plot(p));
    }

    let r = run_scenario(&MacroScenario::pinned_subperiod(&catalog)?)?;
    emitter.write("scenario_subperiod.json", &(r.to_json() + "\n"))?;
    doc.push("Scenario, 1991 samples", "scenario::run_scenario", Body::Markdown(r.to_markdown().replace("\n## ", "\n### ").replace("## Models", "### Models")));
    emitter.write("report.md", &doc.render())?;
    Ok(passed)
}
