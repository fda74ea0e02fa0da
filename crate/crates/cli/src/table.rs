//! Tabular standard output in TSV or JSON Lines.

use std::io::{self, Write};

use serde_json::{Map, Value};

use crate::args::Format;

/// A cell carries its TSV text and its JSON value, which may be more
/// precise than the text.
pub struct Cell {
    text: String,
    json: Value,
}

impl Cell {
    pub fn text(s: impl Into<String>) -> Self {
        let s = s.into();
        Cell { json: Value::String(s.clone()), text: s }
    }

    pub fn int(v: usize) -> Self {
        Cell { text: v.to_string(), json: v.into() }
    }

    /// Fixed decimals in TSV, full precision in JSON.
    pub fn fixed(v: f64, decimals: usize) -> Self {
        Cell { text: format!("{v:.decimals$}"), json: v.into() }
    }

    /// Shortest round-trip form in both.
    pub fn real(v: f64) -> Self {
        Cell { text: v.to_string(), json: v.into() }
    }

    pub fn list(vs: &[f64]) -> Self {
        let text = vs.iter().map(f64::to_string).collect::<Vec<_>>().join("\t");
        Cell { text, json: vs.iter().copied().collect() }
    }
}

pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Table { header: header.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Tsv => {
                out.push_str(&self.header.join("\t"));
                out.push('\n');
                for row in &self.rows {
                    let cells: Vec<&str> = row.iter().map(|c| c.text.as_str()).collect();
                    out.push_str(&cells.join("\t"));
                    out.push('\n');
                }
            }
            Format::JsonLines => {
                for row in &self.rows {
                    let obj: Map<String, Value> =
                        self.header.iter().cloned().zip(row.iter().map(|c| c.json.clone())).collect();
                    out.push_str(&Value::Object(obj).to_string());
                    out.push('\n');
                }
            }
        }
        out
    }

    pub fn print(&self, format: Format) -> io::Result<()> {
        let mut stdout = io::stdout().lock();
        stdout.write_all(self.render(format).as_bytes())?;
        stdout.flush()
    }
}
