use std::fmt::Write as _;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Info,
}

#[derive(Debug, Clone, Serialize)]
pub struct Item {
    pub name: String,
    pub params: Value,
    pub status: Status,
    pub data: Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub version: &'static str,
    pub command: String,
    pub params: Value,
    pub items: Vec<Item>,
    pub status: Status,
}

impl RunReport {
    pub fn new(command: &str, params: Value, items: Vec<Item>) -> Self {
        let failed = items.iter().any(|i| i.status == Status::Fail);
        RunReport {
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            params,
            items,
            status: if failed { Status::Fail } else { Status::Pass },
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Rows of strings rendered either as an aligned table or as CSV.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(headers: impl IntoIterator<Item = S>) -> Self {
        Table {
            headers: headers.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    pub fn text(&self) -> String {
        let cols = self.headers.len();
        let mut width = vec![0; cols];
        for row in std::iter::once(&self.headers).chain(&self.rows) {
            for (w, cell) in width.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let mut out = String::new();
        let line = |out: &mut String, row: &[String]| {
            let cells: Vec<String> = row
                .iter()
                .zip(&width)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect();
            let _ = writeln!(out, "{}", cells.join("  ").trim_end());
        };
        line(&mut out, &self.headers);
        let rule: Vec<String> = width.iter().map(|w| "-".repeat(*w)).collect();
        line(&mut out, &rule);
        for row in &self.rows {
            line(&mut out, row);
        }
        out
    }

    pub fn csv(&self) -> String {
        let field = |s: &String| {
            if s.contains([',', '"', '\n']) {
                format!("\"{}\"", s.replace('"', "\"\""))
            } else {
                s.clone()
            }
        };
        let mut out = String::new();
        for row in std::iter::once(&self.headers).chain(&self.rows) {
            let cells: Vec<String> = row.iter().map(field).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }
}

/// What a command produces: the structured report plus its tabular view and
/// any extra lines shown in text mode.
pub struct Output {
    pub report: RunReport,
    pub table: Table,
    pub notes: Vec<String>,
}

impl Output {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.report).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Csv => self.table.csv(),
            Format::Text => {
                let mut s = self.table.text();
                for n in &self.notes {
                    let _ = writeln!(s, "{n}");
                }
                let _ = writeln!(
                    s,
                    "status: {}",
                    if self.report.passed() { "pass" } else { "fail" }
                );
                s
            }
        }
    }
}
