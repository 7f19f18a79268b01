//! Self-contained SVG charts. Output depends only on the input data and the
//! crate version, so repeated runs produce identical bytes.

use std::fmt::Write as _;
use std::path::Path;

use boxjen::stats::Correlogram;
use boxjen::{AnnualSeries, ForecastTable};

const W: f64 = 720.0;
const H: f64 = 420.0;
const LEFT: f64 = 90.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 50.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotKind {
    Line,
    Correlogram,
    Fanchart,
}

impl std::str::FromStr for PlotKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "line" => Ok(PlotKind::Line),
            "correlogram" => Ok(PlotKind::Correlogram),
            "fanchart" => Ok(PlotKind::Fanchart),
            other => Err(format!("unknown plot kind `{other}`")),
        }
    }
}

pub enum PlotData<'a> {
    Series(&'a AnnualSeries),
    Correlogram { title: &'a str, correlogram: &'a Correlogram },
    Forecast { history: &'a AnnualSeries, table: &'a ForecastTable },
}

#[derive(Debug)]
pub enum PlotError {
    Empty,
    Mismatch(PlotKind),
    Io(std::io::Error),
}

impl std::fmt::Display for PlotError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PlotError::Empty => f.write_str("nothing to plot"),
            PlotError::Mismatch(k) => write!(f, "data cannot be drawn as a {k:?} chart"),
            PlotError::Io(e) => write!(f, "cannot write plot: {e}"),
        }
    }
}

impl std::error::Error for PlotError {}

pub fn emit_plot(data: &PlotData<'_>, kind: PlotKind, path: &Path) -> Result<(), PlotError> {
    let svg = render_svg(data, kind)?;
    std::fs::write(path, svg).map_err(PlotError::Io)
}

pub fn render_svg(data: &PlotData<'_>, kind: PlotKind) -> Result<String, PlotError> {
    match (data, kind) {
        (PlotData::Series(s), PlotKind::Line) => {
            let pts: Vec<(f64, f64)> = s.iter().map(|(y, v)| (y as f64, v)).collect();
            line_chart(s.name(), &s.unit_label(), &pts)
        }
        (PlotData::Forecast { table, .. }, PlotKind::Line) => {
            let pts: Vec<(f64, f64)> = table.rows.iter().map(|r| (r.year as f64, r.point)).collect();
            line_chart("forecast", "", &pts)
        }
        (PlotData::Correlogram { title, correlogram }, PlotKind::Correlogram) => stem_chart(title, correlogram),
        (PlotData::Forecast { history, table }, PlotKind::Fanchart) => fan_chart(history, table),
        (_, k) => Err(PlotError::Mismatch(k)),
    }
}

fn n(v: f64) -> String {
    format!("{v:.2}")
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Round tick positions covering `[lo, hi]`.
fn ticks(lo: f64, hi: f64, target: usize) -> Vec<f64> {
    let span = hi - lo;
    let raw = span / target as f64;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 2.5, 5.0, 10.0].iter().map(|m| m * mag).find(|s| span / s <= target as f64).unwrap_or(10.0 * mag);
    let first = (lo / step).ceil() as i64;
    let last = (hi / step).floor() as i64;
    (first..=last).map(|i| i as f64 * step).collect()
}

fn label(v: f64) -> String {
    let a = v.abs();
    if a != 0.0 && (a >= 1e7 || a < 1e-3) {
        format!("{v:.2e}")
    } else if v.fract() == 0.0 {
        format!("{v:.0}")
    } else {
        let s = format!("{v:.3}");
        s.trim_end_matches('0').to_string()
    }
}

struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
    top: f64,
    height: f64,
}

impl Frame {
    fn new(mut x0: f64, mut x1: f64, mut y0: f64, mut y1: f64, top: f64, height: f64) -> Self {
        if x1 <= x0 {
            x0 -= 1.0;
            x1 += 1.0;
        }
        if y1 <= y0 {
            let pad = if y0 == 0.0 { 1.0 } else { y0.abs() * 0.1 };
            y0 -= pad;
            y1 += pad;
        } else {
            let pad = 0.05 * (y1 - y0);
            y0 -= pad;
            y1 += pad;
        }
        Frame { x0, x1, y0, y1, top, height }
    }

    fn x(&self, v: f64) -> f64 {
        LEFT + (v - self.x0) / (self.x1 - self.x0) * (W - LEFT - RIGHT)
    }

    fn y(&self, v: f64) -> f64 {
        self.top + self.height - (v - self.y0) / (self.y1 - self.y0) * self.height
    }

    fn axes(&self, out: &mut String, integer_x: bool) {
        let (l, r) = (LEFT, W - RIGHT);
        let (t, b) = (self.top, self.top + self.height);
        let _ = writeln!(out, r##"<rect x="{}" y="{}" width="{}" height="{}" fill="none" stroke="#444"/>"##, n(l), n(t), n(r - l), n(b - t));
        for v in ticks(self.y0, self.y1, 5) {
            let y = self.y(v);
            let _ = writeln!(out, r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#ddd"/>"##, n(l), n(y), n(r), n(y));
            let _ = writeln!(out, r#"<text x="{}" y="{}" text-anchor="end" font-size="11">{}</text>"#, n(l - 6.0), n(y + 4.0), label(v));
        }
        for v in ticks(self.x0, self.x1, 8) {
            if integer_x && v.fract() != 0.0 {
                continue;
            }
            let x = self.x(v);
            let _ = writeln!(out, r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#444"/>"##, n(x), n(b), n(x), n(b + 5.0));
            let _ = writeln!(out, r#"<text x="{}" y="{}" text-anchor="middle" font-size="11">{}</text>"#, n(x), n(b + 18.0), label(v));
        }
    }
}

fn open(title: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif">"#
    );
    let _ = writeln!(out, "<!-- boxjen {} -->", env!("CARGO_PKG_VERSION"));
    let _ = writeln!(out, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(out, r#"<text x="{}" y="24" text-anchor="middle" font-size="15">{}</text>"#, n(W / 2.0), escape(title));
    out
}

fn polyline(points: &[(f64, f64)], f: &Frame) -> String {
    points.iter().map(|&(x, y)| format!("{},{}", n(f.x(x)), n(f.y(y)))).collect::<Vec<_>>().join(" ")
}

fn extent(values: impl Iterator<Item = f64>) -> (f64, f64) {
    values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
}

fn line_chart(title: &str, unit: &str, pts: &[(f64, f64)]) -> Result<String, PlotError> {
    if pts.is_empty() {
        return Err(PlotError::Empty);
    }
    let (x0, x1) = extent(pts.iter().map(|p| p.0));
    let (y0, y1) = extent(pts.iter().map(|p| p.1));
    let f = Frame::new(x0, x1, y0, y1, TOP, H - TOP - BOTTOM);
    let mut out = open(title);
    f.axes(&mut out, true);
    if !unit.is_empty() {
        let _ = writeln!(out, r#"<text x="16" y="{}" font-size="11" transform="rotate(-90 16 {})" text-anchor="middle">{}</text>"#, n(H / 2.0), n(H / 2.0), escape(unit));
    }
    if pts.len() > 1 {
        let _ = writeln!(out, r##"<polyline class="series" fill="none" stroke="#1f5f99" stroke-width="1.8" points="{}"/>"##, polyline(pts, &f));
    }
    for &(x, y) in pts.iter().filter(|_| pts.len() <= 80) {
        let _ = writeln!(out, r##"<circle class="marker" cx="{}" cy="{}" r="2.5" fill="#1f5f99"/>"##, n(f.x(x)), n(f.y(y)));
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn stem_chart(title: &str, c: &Correlogram) -> Result<String, PlotError> {
    if c.acf.is_empty() {
        return Err(PlotError::Empty);
    }
    let mut out = open(title);
    let panel = (H - TOP - BOTTOM - 30.0) / 2.0;
    for (i, (name, values)) in [("ACF", &c.acf[1..]), ("PACF", &c.pacf[..])].into_iter().enumerate() {
        let top = TOP + i as f64 * (panel + 30.0);
        let f = Frame { x0: 0.0, x1: c.max_lag as f64 + 1.0, y0: -1.0, y1: 1.0, top, height: panel };
        f.axes(&mut out, true);
        let _ = writeln!(out, r#"<text x="{}" y="{}" font-size="12">{name}</text>"#, n(LEFT + 6.0), n(top + 14.0));
        let zero = f.y(0.0);
        let _ = writeln!(out, r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#444"/>"##, n(LEFT), n(zero), n(W - RIGHT), n(zero));
        for b in [c.band, -c.band] {
            let y = f.y(b);
            let _ = writeln!(out, r##"<line class="band" x1="{}" y1="{}" x2="{}" y2="{}" stroke="#c33" stroke-dasharray="5,4"/>"##, n(LEFT), n(y), n(W - RIGHT), n(y));
        }
        for (k, v) in values.iter().enumerate() {
            let x = f.x((k + 1) as f64);
            let _ = writeln!(out, r##"<line class="stem" x1="{}" y1="{}" x2="{}" y2="{}" stroke="#1f5f99" stroke-width="2"/>"##, n(x), n(zero), n(x), n(f.y(*v)));
            let _ = writeln!(out, r##"<circle cx="{}" cy="{}" r="2.5" fill="#1f5f99"/>"##, n(x), n(f.y(*v)));
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn fan_chart(history: &AnnualSeries, t: &ForecastTable) -> Result<String, PlotError> {
    if t.rows.is_empty() {
        return Err(PlotError::Empty);
    }
    let hist: Vec<(f64, f64)> = history.iter().map(|(y, v)| (y as f64, v)).collect();
    let (x0, _) = extent(hist.iter().map(|p| p.0).chain([t.rows[0].year as f64]));
    let x1 = t.rows.last().map(|r| r.year as f64).unwrap_or(x0);
    let (y0, y1) = extent(hist.iter().map(|p| p.1).chain(t.rows.iter().flat_map(|r| [r.lower, r.upper])));
    let f = Frame::new(x0, x1, y0, y1, TOP, H - TOP - BOTTOM);
    let mut out = open(&format!("{} forecast, {:.0}% interval", history.name(), t.level * 100.0));
    f.axes(&mut out, true);
    let mut band: Vec<(f64, f64)> = t.rows.iter().map(|r| (r.year as f64, r.upper)).collect();
    band.extend(t.rows.iter().rev().map(|r| (r.year as f64, r.lower)));
    let _ = writeln!(out, r##"<polygon class="interval" fill="#9cc3e6" fill-opacity="0.6" stroke="none" points="{}"/>"##, polyline(&band, &f));
    if hist.len() > 1 {
        let _ = writeln!(out, r##"<polyline class="history" fill="none" stroke="#333" stroke-width="1.6" points="{}"/>"##, polyline(&hist, &f));
    }
    let mut path: Vec<(f64, f64)> = hist.last().copied().into_iter().collect();
    path.extend(t.rows.iter().map(|r| (r.year as f64, r.point)));
    let _ = writeln!(out, r##"<polyline class="forecast" fill="none" stroke="#1f5f99" stroke-width="1.8" points="{}"/>"##, polyline(&path, &f));
    for r in &t.rows {
        let _ = writeln!(out, r##"<circle class="marker" cx="{}" cy="{}" r="2.2" fill="#1f5f99"/>"##, n(f.x(r.year as f64)), n(f.y(r.point)));
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use boxjen::arima::{fit, forecast, ArimaOrder, Method};
    use boxjen::stats::correlogram;
    use boxjen::{Catalog, Unit};

    fn fx() -> AnnualSeries {
        Catalog::bundled().series("exchange_rate_1971_2024").unwrap()
    }

    fn attr<'a>(svg: &'a str, class: &str) -> &'a str {
        let start = svg.find(&format!("class=\"{class}\"")).unwrap();
        let rest = &svg[start..];
        let p = rest.find("points=\"").unwrap() + 8;
        let end = rest[p..].find('"').unwrap();
        &rest[p..p + end]
    }

    #[test]
    fn correlogram_band_matches_sample_size() {
        let c = correlogram(&fx(), 12).unwrap();
        assert!((c.band - 1.959964 / 54f64.sqrt()).abs() < 1e-12);
        let svg = render_svg(&PlotData::Correlogram { title: "exchange rate", correlogram: &c }, PlotKind::Correlogram).unwrap();
        assert_eq!(svg.matches("class=\"stem\"").count(), 24);
        assert_eq!(svg.matches("class=\"band\"").count(), 4);
    }

    #[test]
    fn single_point_line_chart() {
        let s = AnnualSeries::new("one", Unit::Usd, 2000, vec![5.0], "").unwrap();
        let svg = render_svg(&PlotData::Series(&s), PlotKind::Line).unwrap();
        assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
        assert_eq!(svg.matches("class=\"marker\"").count(), 1);
        assert!(!svg.contains("NaN"));
    }

    #[test]
    fn fanchart_interval_widens() {
        let f = fit(&fx(), ArimaOrder::new(0, 1, 0).unwrap(), true, Method::ExactMle).unwrap();
        let t = forecast(&f, 23, 0.95).unwrap();
        let svg = render_svg(&PlotData::Forecast { history: &fx(), table: &t }, PlotKind::Fanchart).unwrap();
        let pts: Vec<(f64, f64)> = attr(&svg, "interval")
            .split(' ')
            .map(|p| {
                let (x, y) = p.split_once(',').unwrap();
                (x.parse().unwrap(), y.parse().unwrap())
            })
            .collect();
        let h = pts.len() / 2;
        let widths: Vec<f64> = (0..h).map(|i| pts[2 * h - 1 - i].1 - pts[i].1).collect();
        assert!(widths.windows(2).all(|w| w[1] >= w[0]));
        assert!(widths[h - 1] > widths[0]);
    }

    #[test]
    fn output_is_deterministic_and_kinds_are_checked() {
        let s = fx();
        let a = render_svg(&PlotData::Series(&s), PlotKind::Line).unwrap();
        assert_eq!(a, render_svg(&PlotData::Series(&s), PlotKind::Line).unwrap());
        assert!(matches!(render_svg(&PlotData::Series(&s), PlotKind::Fanchart), Err(PlotError::Mismatch(_))));
    }

    #[test]
    fn unwritable_path_is_reported() {
        let s = fx();
        let err = emit_plot(&PlotData::Series(&s), PlotKind::Line, Path::new("/nonexistent-dir/x.svg")).unwrap_err();
        assert!(matches!(err, PlotError::Io(_)));
    }

    #[test]
    fn tick_positions_are_round() {
        assert_eq!(ticks(0.0, 10.0, 5), vec![0.0, 2.0, 4.0, 6.0, 8.0, 10.0]);
        assert_eq!(ticks(1971.0, 2047.0, 8), (1980..=2040).step_by(10).map(f64::from).collect::<Vec<_>>());
    }
}
