//! Deterministic text serialization shared by the CSV and JSON writers.

use std::fmt::Write as _;

/// Formats a float with 17 significant digits in scientific notation.
///
/// Seventeen digits round-trip every `f64`, and the fixed layout makes
/// repeated runs byte-identical. Non-finite values are written as `inf`,
/// `-inf` and `nan`.
pub fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{x:.16e}")
    }
}

/// One CSV cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    /// A bare label, written verbatim (no commas, quotes or line breaks).
    Text(String),
    /// An empty field (value not defined for this row).
    Empty,
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<i64> for Cell {
    fn from(x: i64) -> Self {
        Cell::Int(x)
    }
}

impl From<Option<i64>> for Cell {
    fn from(x: Option<i64>) -> Self {
        x.map_or(Cell::Empty, Cell::Int)
    }
}

impl From<u64> for Cell {
    fn from(x: u64) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as i64)
    }
}

/// An in-memory CSV table with a fixed header.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable {
    header: Vec<String>,
    rows: Vec<Vec<Cell>>,
}

impl CsvTable {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    /// Appends a row; panics if its width differs from the header.
    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.header.len(), "row width must match header");
        self.rows.push(row);
    }

    pub fn header(&self) -> &[String] {
        &self.header
    }

    pub fn rows(&self) -> &[Vec<Cell>] {
        &self.rows
    }

    /// Renders the table with `\n` line endings.
    pub fn render(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            for (j, cell) in row.iter().enumerate() {
                if j > 0 {
                    out.push(',');
                }
                match cell {
                    Cell::Int(i) => write!(out, "{i}").unwrap(),
                    Cell::Float(x) => out.push_str(&fmt_f64(*x)),
                    Cell::Text(t) => {
                        assert!(!t.contains([',', '"', '\n', '\r']), "CSV label {t:?} needs quoting");
                        out.push_str(t);
                    }
                    Cell::Empty => {}
                }
            }
            out.push('\n');
        }
        out
    }
}
