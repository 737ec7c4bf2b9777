//! Versioned JSON documents, fixed-header CSV and single-polyline SVG plots.
//!
//! A document never carries timings, so the same inputs and seed give
//! byte-identical output. Wall times go to a separate [`Meta`] file.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::constants::{BoundSide, ConstantEstimate};
use crate::error::{Error, Result};
use crate::verify::{CheckReport, SweepParameter, SweepTable};

pub const SCHEMA: &str = "bcl/1";
pub const CSV_HEADER: [&str; 6] = ["suite", "param", "lhs", "rhs", "slack", "status"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "data", rename_all = "snake_case")]
pub enum Payload {
    Estimates(Vec<ConstantEstimate>),
    Reports(Vec<CheckReport>),
    Sweep(SweepTable),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub schema: String,
    #[serde(flatten)]
    pub payload: Payload,
}

impl Document {
    pub fn new(payload: Payload) -> Self {
        Document {
            schema: SCHEMA.to_string(),
            payload,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: Document = serde_json::from_str(text)?;
        if doc.schema != SCHEMA {
            return Err(Error::spec("schema", format!("expected `{SCHEMA}`, got `{}`", doc.schema)));
        }
        Ok(doc)
    }

    /// Records in the fixed CSV column order.
    pub fn records(&self) -> Vec<[String; 6]> {
        match &self.payload {
            Payload::Estimates(list) => list
                .iter()
                .map(|e| {
                    let param = match e.n {
                        Some(n) => format!("N={n} seed={}", e.seed),
                        None => format!("seed={}", e.seed),
                    };
                    let bound = match e.bound_side {
                        BoundSide::Lower => "lower",
                        BoundSide::Upper => "upper",
                        BoundSide::Heuristic => "heuristic",
                    };
                    [e.kind.name().to_string(), param, num(e.value), String::new(), String::new(), bound.to_string()]
                })
                .collect(),
            Payload::Reports(reports) => reports
                .iter()
                .flat_map(|r| r.rows.iter())
                .map(|row| {
                    [
                        row.suite.clone(),
                        row.param.clone(),
                        num(row.lhs),
                        num(row.rhs),
                        num(row.slack),
                        row.status.label().to_string(),
                    ]
                })
                .collect(),
            Payload::Sweep(t) => t
                .rows
                .iter()
                .map(|row| {
                    [
                        format!("sweep:{}", t.experiment),
                        format!("{}={} {}", t.parameter.name(), num(row.param), t.value_label),
                        num(row.value),
                        row.reference.map(num).unwrap_or_default(),
                        String::new(),
                        "reported".to_string(),
                    ]
                })
                .collect(),
        }
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let csv_err = |e: csv::Error| Error::InvalidArgument(format!("csv: {e}"));
        w.write_record(CSV_HEADER).map_err(csv_err)?;
        for r in self.records() {
            w.write_record(&r).map_err(csv_err)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::InvalidArgument(format!("csv: {e}")))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    /// Whether every asserted row passes. Estimates and sweeps always pass.
    pub fn passed(&self) -> bool {
        match &self.payload {
            Payload::Reports(r) => r.iter().all(CheckReport::passed),
            _ => true,
        }
    }
}

/// Shortest round-trip decimal, `inf`/`-inf`/`NaN` for non-finite values.
fn num(v: f64) -> String {
    format!("{v}")
}

/// Timing side-channel written next to a document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub schema: String,
    pub command: String,
    pub wall_time_s: f64,
    pub suite_wall_times_s: Vec<(String, f64)>,
}

impl Meta {
    pub fn new(command: &str, wall_time_s: f64, doc: &Document) -> Self {
        let suite_wall_times_s = match &doc.payload {
            Payload::Reports(r) => r.iter().map(|r| (r.suite.clone(), r.wall_time)).collect(),
            _ => Vec::new(),
        };
        Meta {
            schema: SCHEMA.to_string(),
            command: command.to_string(),
            wall_time_s,
            suite_wall_times_s,
        }
    }
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", path.display())))
}

/// Sibling path `<path>.meta.json`.
pub fn meta_path(path: &Path) -> std::path::PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".meta.json");
    s.into()
}

/// Line chart of a sweep: one polyline with a vertex per grid value.
/// Exponent sweeps containing `inf` are drawn against `1/p`.
pub fn sweep_svg(table: &SweepTable) -> Result<String> {
    if table.rows.is_empty() {
        return Err(Error::spec("grid", "cannot plot an empty sweep"));
    }
    let use_dual = table.parameter == SweepParameter::P && table.rows.iter().any(|r| r.param.is_infinite());
    let x_label = if use_dual { "1/p".to_string() } else { table.parameter.name().to_string() };
    let xs: Vec<f64> = table
        .rows
        .iter()
        .map(|r| if use_dual { 1.0 / r.param } else { r.param })
        .collect();
    let ys: Vec<f64> = table.rows.iter().map(|r| r.value).collect();
    if ys.iter().any(|y| !y.is_finite()) {
        return Err(Error::NonFinite);
    }
    let span = |v: &[f64]| {
        let lo = v.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        if hi - lo > 1e-12 {
            (lo, hi)
        } else {
            (lo - 0.5, hi + 0.5)
        }
    };
    let (x0, x1) = span(&xs);
    let (y0, y1) = span(&ys);
    let (w, h, m) = (640.0, 420.0, 60.0);
    let px = |x: f64| m + (x - x0) / (x1 - x0) * (w - 2.0 * m);
    let py = |y: f64| h - m - (y - y0) / (y1 - y0) * (h - 2.0 * m);

    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#);
    let _ = writeln!(s, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<g stroke="black" stroke-width="1"><line x1="{m}" y1="{b}" x2="{r}" y2="{b}"/><line x1="{m}" y1="{b}" x2="{m}" y2="{m}"/></g>"#,
        b = h - m,
        r = w - m
    );
    let ticks = [
        (m, h - m + 18.0, "middle", fmt_tick(x0)),
        (w - m, h - m + 18.0, "middle", fmt_tick(x1)),
        (m - 6.0, h - m, "end", fmt_tick(y0)),
        (m - 6.0, m + 4.0, "end", fmt_tick(y1)),
    ];
    for (x, y, anchor, text) in ticks {
        let _ = writeln!(s, r#"<text x="{x}" y="{y}" font-size="11" text-anchor="{anchor}">{text}</text>"#);
    }
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" font-size="13" text-anchor="middle">{}</text>"#,
        w / 2.0,
        h - 15.0,
        escape(&x_label)
    );
    let _ = writeln!(
        s,
        r#"<text x="18" y="{}" font-size="13" text-anchor="middle" transform="rotate(-90 18 {})">{}</text>"#,
        h / 2.0,
        h / 2.0,
        escape(&table.value_label)
    );
    let points: Vec<String> = xs.iter().zip(&ys).map(|(&x, &y)| format!("{:.3},{:.3}", px(x), py(y))).collect();
    let _ = writeln!(
        s,
        r#"<polyline fill="none" stroke="steelblue" stroke-width="2" points="{}"/>"#,
        points.join(" ")
    );
    s.push_str("</svg>\n");
    Ok(s)
}

fn fmt_tick(v: f64) -> String {
    format!("{:.4}", v).trim_end_matches('0').trim_end_matches('.').to_string()
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
