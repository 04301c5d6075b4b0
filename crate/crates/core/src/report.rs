//! Renderings of extendability reports as JSON, CSV and Markdown.
//!
//! CSV columns for reports, in order:
//! `family,l,N_l,N_l_threshold_reading,t1,t2,t3,t4,t5,beta_hi,beta_min,alpha_hi,conclusion,normal_vanishing,surface_alpha,published_bound,flag`.
//! Intervals print as `[lo,hi]`, absent values as the empty string.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{FanoError, Result};
use crate::extendability::{ExtendabilityReport, Flag, KlmRow, Table1Row};

/// Version of the JSON and CSV layouts.
pub const REPORT_SCHEMA_VERSION: u32 = 1;

pub const REPORT_CSV_HEADER: [&str; 17] = [
    "family",
    "l",
    "N_l",
    "N_l_threshold_reading",
    "t1",
    "t2",
    "t3",
    "t4",
    "t5",
    "beta_hi",
    "beta_min",
    "alpha_hi",
    "conclusion",
    "normal_vanishing",
    "surface_alpha",
    "published_bound",
    "flag",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Markdown,
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema_version: u32,
    rows: &'a [T],
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn normal_vanishing_cell(r: &ExtendabilityReport) -> String {
    if r.normal_vanishing_pass() {
        "pass".into()
    } else {
        let ks: Vec<String> = r.normal_vanishing.iter().filter(|p| !p.pass).map(|p| p.k.to_string()).collect();
        format!("fail k={}", ks.join("/"))
    }
}

fn report_cells(r: &ExtendabilityReport) -> Vec<String> {
    let b = &r.beta;
    vec![
        r.family.clone(),
        r.l.to_string(),
        r.n_l.value.to_string(),
        r.n_l.threshold_reading.to_string(),
        b.t1.to_string(),
        b.t2.to_string(),
        b.t3.to_string(),
        b.t4.to_string(),
        b.t5.to_string(),
        opt(b.beta_hi),
        b.beta_min.to_string(),
        opt(r.alpha_hi),
        r.conclusion.to_string(),
        normal_vanishing_cell(r),
        r.surface_alpha.value.to_string(),
        opt(r.published_bound),
        opt(r.flag),
    ]
}

fn csv_string(header: &[&str], rows: impl Iterator<Item = Vec<String>>) -> Result<String> {
    let io = |e: csv::Error| FanoError::Io(std::io::Error::other(e));
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(&r).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| FanoError::Io(std::io::Error::other(e.to_string())))?;
    String::from_utf8(bytes).map_err(|e| FanoError::Internal(e.to_string()))
}

fn markdown(header: &[&str], rows: impl Iterator<Item = Vec<String>>) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "| {} |", header.join(" | "));
    let _ = writeln!(s, "|{}", "---|".repeat(header.len()));
    for r in rows {
        let _ = writeln!(s, "| {} |", r.join(" | "));
    }
    s
}

fn json<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut s = serde_json::to_string_pretty(&Envelope { schema_version: REPORT_SCHEMA_VERSION, rows })
        .map_err(|e| FanoError::Internal(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn render<T: Serialize>(rows: &[T], header: &[&str], cells: impl Fn(&T) -> Vec<String>, format: Format) -> Result<String> {
    match format {
        Format::Json => json(rows),
        Format::Csv => csv_string(header, rows.iter().map(cells)),
        Format::Markdown => Ok(markdown(header, rows.iter().map(cells))),
    }
}

pub fn render_reports(rows: &[ExtendabilityReport], format: Format) -> Result<String> {
    render(rows, &REPORT_CSV_HEADER, report_cells, format)
}

pub const TABLE1_HEADER: [&str; 4] = ["family", "l", "extendability", "source"];

pub fn render_table1(rows: &[Table1Row], format: Format) -> Result<String> {
    let cells = |r: &Table1Row| vec![r.family.clone(), r.l.to_string(), r.extendability.to_string(), r.source.clone()];
    render(rows, &TABLE1_HEADER, cells, format)
}

pub const KLM_HEADER: [&str; 5] = ["family", "engine_l_y", "published_l_y", "veronese_bound", "improvement"];

pub fn render_klm(rows: &[KlmRow], format: Format) -> Result<String> {
    let cells = |r: &KlmRow| {
        vec![
            r.family.clone(),
            r.engine_l_y.to_string(),
            r.published_l_y.to_string(),
            opt(r.veronese_bound),
            opt(r.improvement),
        ]
    };
    render(rows, &KLM_HEADER, cells, format)
}

/// `0` when every compared row is a `Match`, `2` otherwise.
pub fn exit_code(rows: &[ExtendabilityReport]) -> i32 {
    if rows.iter().filter_map(|r| r.flag).all(|f| f == Flag::Match) {
        0
    } else {
        2
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extendability::report;
    use crate::families::family;

    #[test]
    fn csv_header_and_row() {
        let r = report(family("1.12").unwrap(), 3).unwrap();
        let s = render_reports(&[r], Format::Csv).unwrap();
        let mut lines = s.lines();
        assert_eq!(lines.next().unwrap(), REPORT_CSV_HEADER.join(","));
        let row = lines.next().unwrap();
        assert!(row.starts_with("1.12,3,27,"), "{row}");
        assert!(row.ends_with(",8,Match"), "{row}");
    }

    #[test]
    fn json_envelope() {
        let r = report(family("1.12").unwrap(), 5).unwrap();
        let s = render_reports(&[r], Format::Json).unwrap();
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["rows"][0]["beta"]["beta_hi"], 0);
        assert_eq!(v["rows"][0]["flag"], "Match");
    }

    #[test]
    fn markdown_table_shape() {
        let s = render_table1(&[], Format::Markdown).unwrap();
        assert_eq!(s, "| family | l | extendability | source |\n|---|---|---|---|\n");
    }
}
