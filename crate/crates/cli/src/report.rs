//! Tabular results and their CSV and JSON renderings.

use serde::Serialize;
use serde_json::{Map, Value};

use crate::config::Format;

/// One table entry.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Float(f64),
    Int(i64),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Float(v) => format!("{v:.16e}"),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Float(v) => serde_json::Number::from_f64(*v).map_or(Value::Null, Value::Number),
            Cell::Int(v) => Value::from(*v),
            Cell::Text(s) => Value::from(s.as_str()),
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Float(v) => Some(*v),
            Cell::Int(v) => Some(*v as f64),
            Cell::Text(_) => None,
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

/// Result of one command: a table plus the context needed to reproduce and
/// judge it.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: &'static str,
    pub params: Value,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub tolerances: Map<String, Value>,
    pub summary: Map<String, Value>,
    /// Set when a check built into the command did not hold.
    pub failure: Option<String>,
    /// Human-readable remarks for stderr, such as parameter snapping.
    pub notices: Vec<String>,
}

impl Report {
    pub fn new(command: &'static str, params: Value, columns: Vec<&'static str>) -> Self {
        Self {
            command,
            params,
            columns,
            rows: Vec::new(),
            tolerances: Map::new(),
            summary: Map::new(),
            failure: None,
            notices: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    /// Values of a named column, `None` where the entry is not numeric.
    pub fn column(&self, name: &str) -> Vec<Option<f64>> {
        let Some(i) = self.columns.iter().position(|c| *c == name) else {
            return Vec::new();
        };
        self.rows.iter().map(|row| row[i].as_f64()).collect()
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => {
                serde_json::to_string_pretty(&self.to_json()).expect("report serializes") + "\n"
            }
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "# checkers {} {}\n",
            env!("CARGO_PKG_VERSION"),
            self.command
        ));
        out.push_str(&format!("# params: {}\n", self.params));
        out.push_str(&format!(
            "# tolerances: {}\n",
            Value::Object(self.tolerances.clone())
        ));
        for (key, value) in &self.summary {
            out.push_str(&format!("# {key}: {value}\n"));
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let fields = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, v)| (c.to_string(), v.json()));
                Value::Object(fields.collect())
            })
            .collect();
        serde_json::json!({
            "command": self.command,
            "params": self.params,
            "rows": rows,
            "tolerances": self.tolerances,
            "summary": self.summary,
        })
    }
}
