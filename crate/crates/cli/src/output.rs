//! Tabular reports and their text, CSV and JSON renderings.
//!
//! Rationals are always written as `p/q` so that CSV and JSON files can be
//! parsed back into the exact values.

use std::fmt::Write as _;

use pzf_core::rational::to_pq;
use pzf_core::Rational;
use serde_json::{json, Map, Value};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Text(String),
    Int(i64),
    Float(f64),
    Rational(Rational),
    Bool(bool),
    Empty,
}

impl Cell {
    pub fn text(s: impl Into<String>) -> Self {
        Cell::Text(s.into())
    }

    pub fn plain(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Int(i) => i.to_string(),
            Cell::Float(f) => f.to_string(),
            Cell::Rational(r) => to_pq(r),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Text(s) => json!(s),
            Cell::Int(i) => json!(i),
            Cell::Float(f) if f.is_finite() => json!(f),
            Cell::Float(_) | Cell::Empty => Value::Null,
            Cell::Rational(r) => json!(to_pq(r)),
            Cell::Bool(b) => json!(b),
        }
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<Rational> for Cell {
    fn from(r: Rational) -> Self {
        Cell::Rational(r)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Empty, Into::into)
    }
}

/// One table of results with free-form notes.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub notes: Vec<String>,
    /// Rows that failed a check.
    pub failures: usize,
    /// Whether failures should turn into a nonzero exit status.
    pub enforce: bool,
}

impl Report {
    pub fn new(title: impl Into<String>, columns: &[&str]) -> Self {
        Report {
            title: title.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            ..Report::default()
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Text => Ok(self.to_text()),
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    pub fn to_text(&self) -> String {
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(Cell::plain).collect())
            .collect();
        let widths: Vec<usize> = (0..self.columns.len())
            .map(|j| {
                cells
                    .iter()
                    .map(|r| r[j].chars().count())
                    .chain([self.columns[j].len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |fields: &[String]| {
            fields
                .iter()
                .zip(&widths)
                .map(|(f, w)| format!("{f:<w$}"))
                .collect::<Vec<_>>()
                .join("  ")
                .trim_end()
                .to_string()
        };
        let mut out = String::new();
        if !self.title.is_empty() {
            let _ = writeln!(out, "{}", self.title);
        }
        let _ = writeln!(out, "{}", line(&self.columns));
        for r in &cells {
            let _ = writeln!(out, "{}", line(r));
        }
        for n in &self.notes {
            let _ = writeln!(out, "{n}");
        }
        out
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let err = |e: csv::Error| CliError::Output(e.to_string());
        w.write_record(&self.columns).map_err(err)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::plain)).map_err(err)?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| CliError::Output(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| CliError::Output(e.to_string()))
    }

    pub fn to_json(&self) -> Result<String> {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .cloned()
                    .zip(row.iter().map(Cell::json))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let doc = json!({
            "title": self.title,
            "columns": self.columns,
            "rows": rows,
            "notes": self.notes,
            "failures": self.failures,
        });
        serde_json::to_string_pretty(&doc)
            .map(|s| s + "\n")
            .map_err(|e| CliError::Output(e.to_string()))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Csv,
    Json,
}


#[cfg(test)]
mod tests {
    use super::*;
    use pzf_core::rational::{parse_rational, ratio};

    fn sample() -> Report {
        let mut r = Report::new("demo", &["graph", "ept", "decimal"]);
        r.push(vec!["diamond".into(), ratio(2911, 1140).into(), "2.55351".into()]);
        r.push(vec!["{0,3}".into(), ratio(21, 8).into(), Cell::Empty]);
        r.note("two rows");
        r
    }

    #[test]
    fn csv_keeps_exact_rationals() {
        let text = sample().to_csv().unwrap();
        let mut rd = csv::Reader::from_reader(text.as_bytes());
        let values: Vec<Rational> = rd
            .records()
            .map(|rec| parse_rational(&rec.unwrap()[1]).unwrap())
            .collect();
        assert_eq!(values, vec![ratio(2911, 1140), ratio(21, 8)]);
    }

    #[test]
    fn json_keeps_exact_rationals() {
        let doc: Value = serde_json::from_str(&sample().to_json().unwrap()).unwrap();
        let got = parse_rational(doc["rows"][0]["ept"].as_str().unwrap()).unwrap();
        assert_eq!(got, ratio(2911, 1140));
        assert_eq!(doc["rows"][1]["decimal"], Value::Null);
    }

    #[test]
    fn text_aligns_columns() {
        let text = sample().to_text();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "demo");
        assert!(lines[1].starts_with("graph    ept"));
        assert_eq!(lines.last().unwrap(), &"two rows");
    }
}
