use std::fmt::Write as _;

use serde::Serialize;

/// Markdown report assembled from titled sections. Each section names the
/// library operation that produced its numbers.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ReportDocument {
    pub title: String,
    pub sections: Vec<Section>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Section {
    pub title: String,
    /// Fully qualified operation, e.g. `unit_root::adf_test`.
    pub source: String,
    pub body: Body,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "content")]
pub enum Body {
    /// Pre-rendered Markdown (usually a table).
    Markdown(String),
    /// Relative path of an emitted image.
    Plot(String),
}

impl ReportDocument {
    pub fn new(title: impl Into<String>) -> Self {
        Self { title: title.into(), sections: Vec::new() }
    }

    pub fn push(&mut self, title: impl Into<String>, source: &str, body: Body) -> &mut Self {
        self.sections.push(Section { title: title.into(), source: source.to_string(), body });
        self
    }

    pub fn render(&self) -> String {
        let mut out = format!("# {}\n", self.title);
        for s in &self.sections {
            let _ = write!(out, "\n## {}\n\n", s.title);
            match &s.body {
                Body::Markdown(md) => {
                    out.push_str(md.trim_end());
                    out.push('\n');
                }
                Body::Plot(path) => {
                    let _ = writeln!(out, "![{}]({path})", s.title);
                }
            }
            let _ = writeln!(out, "\n_Source: `{}`_", s.source);
        }
        out
    }
}
