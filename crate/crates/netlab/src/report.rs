//! Text, HTML, CSV and JSON renderings of correlation matrices, tier tables
//! and indicator tables.
//!
//! Correlations print as `|r|` with a fixed number of decimals; negative
//! values are wrapped in parentheses (`0.884` vs `(0.533)`) and undefined
//! cells print as `—`. Rounding is display-only.

use std::fmt::Write as _;
use std::str::FromStr;

use cpis_netlab_core::metrics::{GraphSummary, NodeIndicators};
use cpis_netlab_core::{
    CellClass, CorrelationMatrix, CountryCode, EconIndicator, NetworkIndicator, Tier,
    TierReport, UndefinedReason,
};
use serde::Serialize;

use crate::error::{Error, Result};

pub const UNDEFINED_MARK: &str = "—";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Html,
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "text" => Ok(Format::Text),
            "html" => Ok(Format::Html),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(Error::Invalid(format!(
                "unknown format {s:?}; expected text, html, csv or json"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReportConfig {
    pub threshold: f64,
    pub decimals: usize,
}

impl ReportConfig {
    pub fn new(threshold: f64, decimals: usize) -> Result<Self> {
        if !(0.0..=1.0).contains(&threshold) {
            return Err(Error::Invalid(format!("threshold {threshold} outside [0, 1]")));
        }
        if decimals < 1 {
            return Err(Error::Invalid("decimals must be at least 1".into()));
        }
        Ok(Self {
            threshold,
            decimals,
        })
    }
}

impl Default for ReportConfig {
    fn default() -> Self {
        Self {
            threshold: 0.5,
            decimals: 3,
        }
    }
}

/// `0.884`, `(0.533)` or `—`. Ties round half to even on the exact binary value.
pub fn format_correlation(r: Option<f64>, decimals: usize) -> String {
    match r {
        None => UNDEFINED_MARK.to_owned(),
        Some(r) if r < 0.0 => format!("({:.*})", decimals, -r),
        Some(r) => format!("{:.*}", decimals, r.abs()),
    }
}

fn class_symbol(class: CellClass) -> char {
    match class {
        CellClass::Positive => '+',
        CellClass::Negative => '-',
        CellClass::Weak => '~',
        CellClass::Undefined => '?',
    }
}

fn reason_label(reason: Option<UndefinedReason>) -> String {
    match reason {
        None => String::new(),
        Some(UndefinedReason::MissingSeries) => "missing series".into(),
        Some(UndefinedReason::ZeroVariance) => "zero variance".into(),
        Some(UndefinedReason::NotSupplied) => "not supplied".into(),
        Some(UndefinedReason::InsufficientOverlap { common }) => {
            format!("insufficient overlap ({common} common years)")
        }
    }
}

fn observation_policy(m: &CorrelationMatrix) -> String {
    let counts: Vec<usize> = m.cells().map(|(_, _, c)| c.n_obs).collect();
    let lo = counts.iter().copied().min().unwrap_or(0);
    let hi = counts.iter().copied().max().unwrap_or(0);
    if lo == hi {
        format!("pairwise-complete years, {lo} per cell")
    } else {
        format!("pairwise-complete years, {lo} to {hi} per cell")
    }
}

/// Renders a correlation matrix in the requested format.
pub fn render_matrix(m: &CorrelationMatrix, cfg: &ReportConfig, format: Format) -> String {
    match format {
        Format::Text => matrix_text(m, cfg),
        Format::Html => matrix_html(m, cfg),
        Format::Csv => matrix_csv(m, cfg),
        Format::Json => matrix_json(m, cfg),
    }
}

fn matrix_text(m: &CorrelationMatrix, cfg: &ReportConfig) -> String {
    let grid: Vec<Vec<String>> = NetworkIndicator::ALL
        .iter()
        .map(|&n| {
            m.row(n)
                .iter()
                .map(|c| format_correlation(c.r, cfg.decimals))
                .collect()
        })
        .collect();
    let width = grid
        .iter()
        .flatten()
        .map(|s| s.chars().count())
        .max()
        .unwrap_or(0)
        .max(2);

    let mut out = String::new();
    let _ = writeln!(out, "Correlation matrix: {}", m.country);
    let _ = writeln!(out, "threshold: {} (|r| below threshold is weak)", m.threshold);
    let _ = writeln!(out, "decimals: {}", cfg.decimals);
    let _ = writeln!(out, "observations: {}", observation_policy(m));
    let _ = writeln!(out, "negative values in parentheses; {UNDEFINED_MARK} marks undefined cells");
    out.push('\n');
    let _ = write!(out, "{:<4}", "");
    for e in EconIndicator::ALL {
        let _ = write!(out, "  {:>width$}", e.code());
    }
    out.push('\n');
    for (n, row) in NetworkIndicator::ALL.iter().zip(&grid) {
        let _ = write!(out, "{:<4}", n.code());
        for cell in row {
            let _ = write!(out, "  {cell:>width$}");
        }
        out.push('\n');
    }

    out.push('\n');
    out.push_str("classes: + positive, - negative, ~ weak, ? undefined\n");
    let _ = write!(out, "{:<4}", "");
    for e in EconIndicator::ALL {
        let _ = write!(out, " {:>3}", e.code());
    }
    out.push('\n');
    for &n in NetworkIndicator::ALL {
        let _ = write!(out, "{:<4}", n.code());
        for c in m.row(n) {
            let _ = write!(out, " {:>3}", class_symbol(c.class));
        }
        out.push('\n');
    }
    out
}

fn escape_html(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&#39;"),
            c => out.push(c),
        }
    }
    out
}

fn html_class(class: CellClass) -> &'static str {
    match class {
        CellClass::Positive => "positive",
        CellClass::Negative => "negative",
        CellClass::Weak => "weak",
        CellClass::Undefined => "undefined",
    }
}

const HTML_STYLE: &str = "\
body { font-family: sans-serif; margin: 2em; }
table { border-collapse: collapse; }
th, td { border: 1px solid #888; padding: 4px 10px; text-align: right; }
td.positive { background: #7fc97f; }
td.negative { background: #f08080; }
td.weak { background: #f7e26b; }
td.undefined { background: #dddddd; color: #555; }
";

fn matrix_html(m: &CorrelationMatrix, cfg: &ReportConfig) -> String {
    let country = escape_html(m.country.as_str());
    let mut out = String::new();
    out.push_str("<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n");
    let _ = writeln!(out, "<title>Correlation matrix: {country}</title>");
    let _ = writeln!(out, "<style>\n{HTML_STYLE}</style>\n</head>\n<body>");
    let _ = writeln!(out, "<h1>Correlation matrix: {country}</h1>");
    let _ = writeln!(
        out,
        "<p>threshold: {} &middot; decimals: {} &middot; observations: {}</p>",
        m.threshold,
        cfg.decimals,
        escape_html(&observation_policy(m))
    );
    out.push_str(
        "<p>Green: positive. Red: negative. Yellow: |r| below threshold. Grey: undefined. \
         Negative values in parentheses.</p>\n",
    );
    out.push_str("<table>\n<tr><th></th>");
    for e in EconIndicator::ALL {
        let _ = write!(out, "<th title=\"{}\">{}</th>", escape_html(e.description()), e.code());
    }
    out.push_str("</tr>\n");
    for &n in NetworkIndicator::ALL {
        let _ = write!(out, "<tr><th title=\"{}\">{}</th>", escape_html(n.description()), n.code());
        for c in m.row(n) {
            let title = match c.reason {
                Some(_) => reason_label(c.reason),
                None => format!("n = {}", c.n_obs),
            };
            let _ = write!(
                out,
                "<td class=\"{}\" title=\"{}\">{}</td>",
                html_class(c.class),
                escape_html(&title),
                format_correlation(c.r, cfg.decimals)
            );
        }
        out.push_str("</tr>\n");
    }
    out.push_str("</table>\n</body>\n</html>\n");
    out
}

fn matrix_csv(m: &CorrelationMatrix, cfg: &ReportConfig) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let _ = w.write_record(["country", "network", "economic", "r", "display", "class", "n_obs", "reason"]);
    for (n, e, c) in m.cells() {
        let _ = w.write_record([
            m.country.as_str(),
            n.code(),
            e.code(),
            &c.r.map(|r| r.to_string()).unwrap_or_default(),
            &format_correlation(c.r, cfg.decimals),
            c.class.label(),
            &c.n_obs.to_string(),
            &reason_label(c.reason),
        ]);
    }
    String::from_utf8(w.into_inner().unwrap_or_default()).unwrap_or_default()
}

#[derive(Serialize)]
struct JsonCell {
    network: &'static str,
    economic: &'static str,
    r: Option<f64>,
    display: String,
    class: &'static str,
    n_obs: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
}

#[derive(Serialize)]
struct JsonMatrix<'a> {
    country: &'a str,
    threshold: f64,
    decimals: usize,
    cells: Vec<JsonCell>,
}

fn matrix_json(m: &CorrelationMatrix, cfg: &ReportConfig) -> String {
    let doc = JsonMatrix {
        country: m.country.as_str(),
        threshold: m.threshold,
        decimals: cfg.decimals,
        cells: m
            .cells()
            .map(|(n, e, c)| JsonCell {
                network: n.code(),
                economic: e.code(),
                r: c.r,
                display: format_correlation(c.r, cfg.decimals),
                class: c.class.label(),
                n_obs: c.n_obs,
                reason: c.reason.map(|r| reason_label(Some(r))),
            })
            .collect(),
    };
    to_json(&doc)
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).unwrap_or_default();
    s.push('\n');
    s
}

/// Parses a matrix grid: header `network,E1,...,E8`, then one row per
/// network index with signed decimals (empty or `—` for undefined cells).
/// Negative values may also be written in parentheses.
pub fn parse_matrix_csv(
    bytes: &[u8],
    country: CountryCode,
    threshold: f64,
    n_obs: usize,
) -> Result<CorrelationMatrix> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(bytes);
    let header = rdr.headers()?.clone();
    let expected: Vec<&str> = std::iter::once("network")
        .chain(EconIndicator::ALL.iter().map(|e| e.code()))
        .collect();
    if header.iter().collect::<Vec<_>>() != expected {
        return Err(Error::Header {
            expected: "network,E1,E2,E3,E4,E5,E6,E7,E8",
            found: header.iter().collect::<Vec<_>>().join(","),
        });
    }
    let mut values = [[None; 8]; 11];
    let mut seen = [false; 11];
    for rec in rdr.records() {
        let rec = rec?;
        let line = rec.position().map_or(0, |p| p.line());
        let row_err = |message: String| Error::Row { line, message };
        let n: NetworkIndicator = rec[0].parse().map_err(|e| row_err(format!("{e}")))?;
        if std::mem::replace(&mut seen[n.position()], true) {
            return Err(row_err(format!("row {n} given twice")));
        }
        for (k, field) in rec.iter().skip(1).enumerate() {
            values[n.position()][k] = parse_cell(field).map_err(row_err)?;
        }
    }
    if let Some(missing) = seen.iter().position(|s| !s) {
        return Err(Error::Invalid(format!(
            "matrix has no row for {}",
            NetworkIndicator::ALL[missing]
        )));
    }
    Ok(CorrelationMatrix::from_values(country, threshold, &values, n_obs)?)
}

fn parse_cell(field: &str) -> std::result::Result<Option<f64>, String> {
    if field.is_empty() || field == UNDEFINED_MARK {
        return Ok(None);
    }
    let (negative, digits) = match field.strip_prefix('(').and_then(|f| f.strip_suffix(')')) {
        Some(inner) => (true, inner),
        None => (false, field),
    };
    let v: f64 = digits
        .parse()
        .map_err(|_| format!("bad correlation value {field:?}"))?;
    if !(-1.0..=1.0).contains(&v) {
        return Err(format!("correlation {field} outside [-1, 1]"));
    }
    Ok(Some(if negative { -v } else { v }))
}

/// Three-column tier table with per-tier counts; members ascend by average closeness.
pub fn render_tier_table(report: &TierReport, format: Format) -> String {
    match format {
        Format::Json => to_json(report),
        Format::Csv => tier_csv(report),
        Format::Text | Format::Html => tier_text(report),
    }
}

fn tier_csv(report: &TierReport) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let _ = w.write_record(["country", "tier", "avg_closeness", "years_counted"]);
    for a in &report.assignments {
        let _ = w.write_record([
            a.country.as_str(),
            &a.tier.number().to_string(),
            &a.avg_closeness.to_string(),
            &a.years_counted.to_string(),
        ]);
    }
    String::from_utf8(w.into_inner().unwrap_or_default()).unwrap_or_default()
}

fn tier_text(report: &TierReport) -> String {
    let th = &report.thresholds;
    let mut columns: Vec<Vec<String>> = Tier::ALL
        .iter()
        .map(|&t| {
            let bound = match t {
                Tier::Tier1 => format!("CC <= {:.2}", th.t1_max()),
                Tier::Tier2 => format!("CC <= {:.2}", th.t2_max()),
                Tier::Tier3 => format!("CC > {:.2}", th.t2_max()),
            };
            let mut col = vec![t.to_string(), bound, format!("n = {}", report.count(t))];
            col.extend(
                report
                    .members(t)
                    .map(|a| format!("{} ({:.3})", a.country, a.avg_closeness)),
            );
            col
        })
        .collect();
    let height = columns.iter().map(Vec::len).max().unwrap_or(0);
    let width = columns
        .iter()
        .flatten()
        .map(|s| s.chars().count())
        .max()
        .unwrap_or(0);
    for col in &mut columns {
        col.resize(height, String::new());
    }

    let mut out = String::from("Classification based on average closeness (mean hop distance)\n\n");
    for i in 0..height {
        let line = columns
            .iter()
            .map(|c| format!("{:<width$}", c[i]))
            .collect::<Vec<_>>()
            .join("  ");
        out.push_str(line.trim_end());
        out.push('\n');
    }
    if !report.untierable.is_empty() {
        out.push_str("\nwarnings (not tiered):\n");
        for u in &report.untierable {
            let _ = writeln!(out, "  {}: {}", u.country, u.reason);
        }
    }
    out
}

const INDICATOR_HEADER: [&str; 13] = [
    "year", "country", "n1", "n2", "n3", "n4", "n5", "n6", "n7", "n8", "n9", "n10", "n11",
];

/// Indicator rows as CSV (undefined entries empty) or JSON (undefined as null).
pub fn render_indicators(rows: &[NodeIndicators], format: Format) -> String {
    if format == Format::Json {
        return to_json(&rows);
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    let _ = w.write_record(INDICATOR_HEADER);
    for r in rows {
        let mut rec = vec![r.year.to_string(), r.country.to_string()];
        rec.extend(
            NetworkIndicator::ALL
                .iter()
                .map(|&n| opt(r.value(n))),
        );
        let _ = w.write_record(&rec);
    }
    String::from_utf8(w.into_inner().unwrap_or_default()).unwrap_or_default()
}

fn opt(v: Option<f64>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

/// One row per year of graph-level centralization and clustering.
pub fn render_summaries(rows: &[GraphSummary], format: Format) -> String {
    if format == Format::Json {
        return to_json(&rows);
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    let _ = w.write_record([
        "year",
        "n",
        "degree_centralization",
        "closeness_centralization",
        "global_clustering",
        "average_clustering",
        "random_expected_clustering",
    ]);
    for s in rows {
        let _ = w.write_record([
            s.year.to_string(),
            s.n.to_string(),
            opt(s.degree_centralization),
            opt(s.closeness_centralization),
            opt(s.global_clustering),
            opt(s.average_clustering),
            opt(s.random_expected_clustering),
        ]);
    }
    String::from_utf8(w.into_inner().unwrap_or_default()).unwrap_or_default()
}
