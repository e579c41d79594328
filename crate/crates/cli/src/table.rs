//! Tables and their CSV/JSON encodings.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde_json::{Map, Number, Value};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Int(i64),
    Real(f64),
    /// Written as an empty CSV field or JSON `null`.
    Empty,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Real(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    columns: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Self {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width must match the header");
        self.rows.push(row);
    }

    pub fn columns(&self) -> &[&'static str] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<Cell>] {
        &self.rows
    }

    /// Real cells by column name.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let j = self.columns.iter().position(|c| *c == name)?;
        Some(
            self.rows
                .iter()
                .filter_map(|r| match r[j] {
                    Cell::Real(v) => Some(v),
                    Cell::Int(v) => Some(v as f64),
                    Cell::Empty => None,
                })
                .collect(),
        )
    }

    fn check_finite(&self) -> Result<(), CliError> {
        for (row, cells) in self.rows.iter().enumerate() {
            for (j, cell) in cells.iter().enumerate() {
                if let Cell::Real(v) = cell {
                    if !v.is_finite() {
                        return Err(CliError::NonFinite {
                            column: self.columns[j],
                            row: row + 1,
                            value: *v,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn to_csv(&self) -> Result<String, CliError> {
        self.check_finite()?;
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let fields: Vec<String> = row.iter().map(format_cell).collect();
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Result<String, CliError> {
        self.check_finite()?;
        let records: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (name, cell) in self.columns.iter().zip(row) {
                    let v = match *cell {
                        Cell::Int(i) => Value::from(i),
                        Cell::Real(x) => Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null),
                        Cell::Empty => Value::Null,
                    };
                    obj.insert((*name).to_string(), v);
                }
                Value::Object(obj)
            })
            .collect();
        let mut text = serde_json::to_string_pretty(&Value::Array(records)).expect("JSON values serialize");
        text.push('\n');
        Ok(text)
    }

    pub fn encode(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }
}

/// Shortest decimal that parses back to the same `f64`; exponent form
/// outside `[1e-5, 1e16)`.
pub fn format_real(v: f64) -> String {
    let a = v.abs();
    if a == 0.0 || (1e-5..1e16).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

fn format_cell(cell: &Cell) -> String {
    match *cell {
        Cell::Int(i) => i.to_string(),
        Cell::Real(v) => format_real(v),
        Cell::Empty => String::new(),
    }
}

/// Encodes `table` and writes it to `path`, or to `out` when no path is given.
pub fn emit_table(table: &Table, format: Format, path: Option<&Path>, out: &mut dyn Write) -> Result<(), CliError> {
    let text = table.encode(format)?;
    match path {
        Some(p) => fs::write(p, text).map_err(|source| CliError::Io {
            path: p.display().to_string(),
            source,
        }),
        None => out.write_all(text.as_bytes()).map_err(|source| CliError::Io {
            path: "<stdout>".into(),
            source,
        }),
    }
}
