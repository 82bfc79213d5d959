//! Tabular results and their CSV / JSON rendering.

use serde_json::{json, Map, Number, Value as Json};
use vortexion_core::VERSION;

use crate::params::{Params, Value};

pub const SCHEMA_VERSION: u32 = 1;

/// Seventeen significant digits, so every value round-trips.
pub fn format_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(i64),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Float(x) => format_float(*x),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Json {
        match self {
            Cell::Float(x) => float_json(*x),
            Cell::Int(i) => json!(i),
            Cell::Text(s) => json!(s),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<i64> for Cell {
    fn from(i: i64) -> Self {
        Cell::Int(i)
    }
}

impl From<usize> for Cell {
    fn from(i: usize) -> Self {
        Cell::Int(i as i64)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Text(b.to_string())
    }
}

fn float_json(x: f64) -> Json {
    if !x.is_finite() {
        return Json::Null;
    }
    // arbitrary_precision keeps the fixed-digit text verbatim
    serde_json::from_str::<Number>(&format_float(x)).map(Json::Number).unwrap_or(Json::Null)
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub diagnostics: Vec<String>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Self { columns: columns.to_vec(), ..Self::default() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn note(&mut self, msg: impl Into<String>) {
        self.diagnostics.push(msg.into());
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.iter().map(Cell::csv).collect::<Vec<_>>().join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self, command: &str, params: &Params) -> String {
        let mut echo = Map::new();
        for (k, v) in params.iter() {
            let j = match v {
                Value::Float(x) => float_json(*x),
                Value::Int(i) => json!(i),
                Value::Text(s) => json!(s),
            };
            echo.insert((*k).to_string(), j);
        }
        let rows: Vec<Json> = self.rows.iter().map(|r| Json::Array(r.iter().map(Cell::json).collect())).collect();
        let doc = json!({
            "schema_version": SCHEMA_VERSION,
            "tool_version": VERSION,
            "command": command,
            "parameters": echo,
            "columns": self.columns,
            "rows": rows,
            "diagnostics": self.diagnostics,
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
        s.push('\n');
        s
    }
}
