//! Tabular reports with platform-stable rendering.
//!
//! Numbers are always rendered in scientific notation with 12 significant
//! digits and a signed two-digit (or longer) exponent, e.g.
//! `2.88675134595e-01`. Negative zero renders as zero. CSV and JSON renderings
//! of a report carry identical strings.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};

/// Renders `x` as `d.ddddddddddde+XX`.
pub fn render_number(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let x = if x == 0.0 { 0.0 } else { x };
    let s = format!("{x:.11e}");
    let (mantissa, exp) = s
        .split_once('e')
        .expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa}e{sign}{:02}", exp.unsigned_abs())
}

pub fn render_flag(b: bool) -> String {
    if b { "true" } else { "false" }.into()
}

/// One output row: cells already rendered to strings, in column order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ReportRow {
    cells: Vec<String>,
}

impl ReportRow {
    pub fn new() -> Self {
        ReportRow::default()
    }

    pub fn key(mut self, value: impl ToString) -> Self {
        self.cells.push(value.to_string());
        self
    }

    pub fn num(mut self, value: f64) -> Self {
        self.cells.push(render_number(value));
        self
    }

    pub fn flag(mut self, value: bool) -> Self {
        self.cells.push(render_flag(value));
        self
    }

    pub fn empty(mut self) -> Self {
        self.cells.push(String::new());
        self
    }

    pub fn cells(&self) -> &[String] {
        &self.cells
    }
}

/// A complete report: run configuration, a fixed column set, rows, and the
/// overall pass flag.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    config: Vec<(String, String)>,
    columns: Vec<String>,
    rows: Vec<ReportRow>,
    pass: bool,
}

impl Report {
    pub fn new(columns: &[&str]) -> Self {
        Report {
            config: Vec::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            pass: true,
        }
    }

    pub fn config(mut self, key: &str, value: impl ToString) -> Self {
        self.config.push((key.to_string(), value.to_string()));
        self
    }

    pub fn push(&mut self, row: ReportRow) {
        assert_eq!(
            row.cells.len(),
            self.columns.len(),
            "row width must match the column count"
        );
        self.rows.push(row);
    }

    /// Records an asserted property; the report passes only if all do.
    pub fn require(&mut self, ok: bool) {
        self.pass &= ok;
    }

    pub fn pass(&self) -> bool {
        self.pass
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    pub fn rows(&self) -> &[ReportRow] {
        &self.rows
    }

    /// Cell by column name.
    pub fn cell(&self, row: usize, column: &str) -> Option<&str> {
        let idx = self.columns.iter().position(|c| c == column)?;
        self.rows.get(row).map(|r| r.cells[idx].as_str())
    }

    /// Header row then one line per row, comma separated, LF terminated.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{}", self.columns.join(",")).unwrap();
        for row in &self.rows {
            writeln!(out, "{}", row.cells.join(",")).unwrap();
        }
        out
    }

    /// `{"config": {...}, "rows": [{...}], "pass": bool}`, pretty printed.
    pub fn to_json(&self) -> String {
        let config: Map<String, Value> = self
            .config
            .iter()
            .map(|(k, v)| (k.clone(), Value::String(v.clone())))
            .collect();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(&r.cells)
                    .map(|(k, v)| (k.clone(), Value::String(v.clone())))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let doc = json!({ "config": config, "rows": rows, "pass": self.pass });
        let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
        s.push('\n');
        s
    }
}
