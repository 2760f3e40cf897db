use serde_json::{json, Map, Value};

use crate::config::Format;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Int(i64),
    Real(f64),
    Missing,
}

/// Column names plus rows; the shape every subcommand writes.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Summary {
    pub max_error: Option<f64>,
    pub final_rate: Option<f64>,
    /// Extra named diagnostics, kept in insertion order.
    pub extra: Vec<(String, Cell)>,
}

impl Summary {
    pub fn line(&self) -> String {
        let mut parts = Vec::new();
        if let Some(e) = self.max_error {
            parts.push(format!("max error {}", sci(e)));
        }
        if let Some(r) = self.final_rate {
            parts.push(format!("final rate {r:.3}"));
        }
        for (name, v) in &self.extra {
            parts.push(format!("{name} {}", cell_text(v)));
        }
        parts.join(", ")
    }

    fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("max_error".into(), self.max_error.map_or(Value::Null, real));
        m.insert("final_rate".into(), self.final_rate.map_or(Value::Null, real));
        for (name, v) in &self.extra {
            m.insert(name.clone(), cell_json(v));
        }
        Value::Object(m)
    }
}

/// Scientific notation with five significant digits and a signed two-digit
/// exponent, e.g. `1.6967e-02`.
pub fn sci(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    let s = format!("{x:.4e}");
    let (mantissa, exp) = s.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa}e{sign}{:02}", exp.abs())
}

fn cell_text(c: &Cell) -> String {
    match c {
        Cell::Int(v) => v.to_string(),
        Cell::Real(v) => sci(*v),
        Cell::Missing => String::new(),
    }
}

fn cell_json(c: &Cell) -> Value {
    match c {
        Cell::Int(v) => json!(v),
        Cell::Real(v) => real(*v),
        Cell::Missing => Value::Null,
    }
}

fn real(x: f64) -> Value {
    // Non-finite values have no JSON spelling.
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

pub fn to_csv(table: &Table) -> String {
    let mut out = table.columns.join(",");
    out.push('\n');
    for row in &table.rows {
        let fields: Vec<String> = row.iter().map(cell_text).collect();
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

pub fn to_json(config: Value, table: &Table, summary: &Summary) -> String {
    let rows: Vec<Value> = table
        .rows
        .iter()
        .map(|row| {
            let m: Map<String, Value> = table
                .columns
                .iter()
                .zip(row)
                .map(|(name, c)| (name.clone(), cell_json(c)))
                .collect();
            Value::Object(m)
        })
        .collect();
    let doc = json!({ "config": config, "rows": rows, "summary": summary.to_json() });
    let mut s = serde_json::to_string_pretty(&doc).expect("json serializes");
    s.push('\n');
    s
}

pub fn render(format: Format, config: Value, table: &Table, summary: &Summary) -> String {
    match format {
        Format::Csv => to_csv(table),
        Format::Json => to_json(config, table, summary),
    }
}
