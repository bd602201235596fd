use serde_json::Value;

use super::Format;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Number(f64),
    Integer(i64),
    Error(String),
}

/// Tabular output rendered as CSV or as a JSON array of row objects.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

/// 17 significant digits, scientific notation.
pub fn format_number(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        format!("{v}")
    }
}

fn csv_cell(c: &Cell) -> String {
    match c {
        Cell::Number(v) => format_number(*v),
        Cell::Integer(i) => i.to_string(),
        Cell::Error(msg) => format!("ERROR: {}", msg.replace([',', '\n', '"'], ";")),
    }
}

fn json_cell(c: &Cell) -> Value {
    match c {
        Cell::Number(v) if v.is_finite() => {
            // the same 17-digit text as the CSV, parsed back
            Value::from(format_number(*v).parse::<f64>().expect("formatted float parses"))
        }
        Cell::Number(v) => Value::from(format!("{v}")),
        Cell::Integer(i) => Value::from(*i),
        Cell::Error(msg) => serde_json::json!({ "error": msg }),
    }
}

impl Table {
    pub fn new(header: &[&str]) -> Table {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push_numbers(&mut self, values: &[f64]) {
        self.rows.push(values.iter().map(|v| Cell::Number(*v)).collect());
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => {
                let mut s = self.header.join(",");
                s.push('\n');
                for row in &self.rows {
                    let cells: Vec<String> = row.iter().map(csv_cell).collect();
                    s.push_str(&cells.join(","));
                    s.push('\n');
                }
                s
            }
            Format::Json => {
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|row| {
                        let obj = self
                            .header
                            .iter()
                            .zip(row)
                            .map(|(h, c)| (h.clone(), json_cell(c)))
                            .collect::<serde_json::Map<_, _>>();
                        Value::Object(obj)
                    })
                    .collect();
                let mut s = serde_json::to_string_pretty(&rows).expect("table serializes");
                s.push('\n');
                s
            }
        }
    }
}
