//! Rendering of tables and exact values.

use clap::ValueEnum;
use pirtrade_core::ExactRational;
use serde_json::{json, Value};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

/// Output settings shared by every subcommand.
#[derive(Debug, Clone, Copy)]
pub struct ReportSpec {
    pub format: Format,
    pub precision: usize,
}

impl ReportSpec {
    pub fn decimal(&self, v: &ExactRational) -> String {
        v.to_decimal(self.precision)
    }

    /// `{"exact": "p/q", "decimal": "..."}`
    pub fn value(&self, v: &ExactRational) -> Value {
        json!({ "exact": v.to_string(), "decimal": self.decimal(v) })
    }

    /// `p/q (decimal)` for text output.
    pub fn both(&self, v: &ExactRational) -> String {
        if v.is_integer() {
            v.to_string()
        } else {
            format!("{v} ({})", self.decimal(v))
        }
    }
}

/// A header plus string rows; rendered as CSV or aligned text.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Self {
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
    }

    pub fn to_text(&self) -> String {
        let mut widths: Vec<usize> = self.header.iter().map(|h| h.chars().count()).collect();
        for row in &self.rows {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |cells: Vec<&str>| {
            let padded: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect();
            padded.join("  ").trim_end().to_string() + "\n"
        };
        let mut out = line(self.header.clone());
        for row in &self.rows {
            out.push_str(&line(row.iter().map(String::as_str).collect()));
        }
        out
    }
}

pub fn json_string(v: &Value) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use pirtrade_core::q;

    #[test]
    fn renders() {
        let spec = ReportSpec { format: Format::Csv, precision: 3 };
        let mut t = Table::new(&["a", "b_exact"]);
        t.push(vec!["x,y".into(), "1/3".into()]);
        assert_eq!(t.to_csv().unwrap(), "a,b_exact\n\"x,y\",1/3\n");
        assert_eq!(t.to_text(), "a    b_exact\nx,y  1/3\n");
        assert_eq!(spec.value(&q(31, 125)), json!({"exact": "31/125", "decimal": "0.248"}));
        assert_eq!(spec.both(&q(3, 1)), "3");
    }
}
