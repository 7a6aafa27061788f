//! Flat tabular reports rendered as aligned text, CSV or JSON.

use std::fmt::Write as _;

use anyhow::{bail, Result};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};
use sumfree_core::rational::{self, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum FormatKind {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy)]
pub struct OutputFormat {
    pub kind: FormatKind,
    pub decimals: usize,
}

impl OutputFormat {
    pub fn new(kind: FormatKind, decimals: usize) -> Result<Self> {
        if !(1..=15).contains(&decimals) {
            bail!("--decimals must be between 1 and 15, got {decimals}");
        }
        Ok(Self { kind, decimals })
    }
}

/// One cell. Numbers are rounded once, when the report is built.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(BigUint),
    /// Already rounded decimal string.
    Fixed(String),
    Text(String),
    Bool(bool),
    Empty,
}

impl Cell {
    pub fn int(v: impl Into<BigUint>) -> Self {
        Cell::Int(v.into())
    }

    pub fn exact(r: &Rational, decimals: usize) -> Self {
        Cell::Fixed(rational::to_fixed_half_even(r, decimals))
    }

    /// Rounds the exact binary value of `x`, ties to even.
    pub fn float(x: f64, decimals: usize) -> Self {
        match rational::from_f64_exact(x) {
            Some(r) => Cell::exact(&r, decimals),
            None => Cell::Text(x.to_string()),
        }
    }

    pub fn text(s: impl Into<String>) -> Self {
        Cell::Text(s.into())
    }

    fn plain(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Fixed(s) | Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => match v.to_u64() {
                Some(x) => json!(x),
                None => json!(v.to_string()),
            },
            Cell::Fixed(s) => s
                .parse::<f64>()
                .ok()
                .and_then(serde_json::Number::from_f64)
                .map(Value::Number)
                .unwrap_or_else(|| json!(s)),
            Cell::Text(s) => json!(s),
            Cell::Bool(b) => json!(b),
            Cell::Empty => Value::Null,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: &'static str,
    pub params: Vec<(&'static str, Value)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub notes: Vec<(&'static str, Value)>,
    pub config: Vec<(&'static str, Value)>,
}

impl Report {
    pub fn new(command: &'static str, columns: Vec<&'static str>) -> Self {
        Self {
            command,
            params: Vec::new(),
            columns,
            rows: Vec::new(),
            notes: Vec::new(),
            config: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, fmt: OutputFormat) -> Result<String> {
        match fmt.kind {
            FormatKind::Text => Ok(self.render_text()),
            FormatKind::Csv => self.render_csv(),
            FormatKind::Json => Ok(render_json_value(&self.to_json())),
        }
    }

    fn render_text(&self) -> String {
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(Cell::plain).collect())
            .collect();
        let widths: Vec<usize> = self
            .columns
            .iter()
            .enumerate()
            .map(|(j, h)| {
                cells
                    .iter()
                    .map(|r| r[j].len())
                    .chain([h.len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let mut out = String::new();
        let line = |out: &mut String, items: &[String]| {
            let parts: Vec<String> = items
                .iter()
                .zip(&widths)
                .map(|(s, w)| format!("{s:>w$}"))
                .collect();
            let _ = writeln!(out, "{}", parts.join("  ").trim_end());
        };
        let header: Vec<String> = self.columns.iter().map(|s| s.to_string()).collect();
        line(&mut out, &header);
        for r in &cells {
            line(&mut out, r);
        }
        for (key, value) in &self.notes {
            let shown = match value {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            let _ = writeln!(out, "# {key}: {shown}");
        }
        out
    }

    fn render_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns)?;
        for r in &self.rows {
            w.write_record(r.iter().map(Cell::plain))?;
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }

    pub fn to_json(&self) -> Value {
        let results: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                let rec: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(r)
                    .map(|(c, v)| (c.to_string(), v.json()))
                    .collect();
                Value::Object(rec)
            })
            .collect();
        let mut metadata: Map<String, Value> = self
            .notes
            .iter()
            .map(|(k, v)| (k.to_string(), v.clone()))
            .collect();
        metadata.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
        metadata.insert(
            "config".into(),
            Value::Object(
                self.config
                    .iter()
                    .map(|(k, v)| (k.to_string(), v.clone()))
                    .collect(),
            ),
        );
        json!({
            "command": self.command,
            "params": Value::Object(self.params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()),
            "results": results,
            "metadata": metadata,
        })
    }
}

/// Canonical JSON text; parsing it and rendering again gives the same bytes.
pub fn render_json_value(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values always serialize");
    s.push('\n');
    s
}
