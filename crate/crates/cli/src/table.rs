//! Tabular results and their CSV/JSON encodings.
//!
//! Floats are written in Rust's shortest round-trip form. Columns marked as
//! scaled hold energies or temperatures and are multiplied by the display
//! scale on output; everything else is emitted as computed.

use serde_json::{Map, Number, Value};

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(u64),
    Text(String),
    Empty,
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as u64)
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Empty, Cell::Float)
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Column {
    pub name: &'static str,
    pub scaled: bool,
}

pub const fn plain(name: &'static str) -> Column {
    Column {
        name,
        scaled: false,
    }
}

pub const fn scaled(name: &'static str) -> Column {
    Column { name, scaled: true }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<Cell>>,
}

fn float_text(x: f64) -> String {
    format!("{x:?}")
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

impl Table {
    pub fn new(columns: &[Column]) -> Self {
        Self {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn header(&self) -> String {
        self.columns
            .iter()
            .map(|c| c.name)
            .collect::<Vec<_>>()
            .join(",")
    }

    fn scaled_value(&self, col: usize, cell: &Cell, scale: f64) -> Cell {
        match cell {
            Cell::Float(x) if self.columns[col].scaled => Cell::Float(x * scale),
            other => other.clone(),
        }
    }

    pub fn to_csv(&self, scale: f64) -> String {
        let mut out = self.header();
        out.push('\n');
        for row in &self.rows {
            let fields: Vec<String> = row
                .iter()
                .enumerate()
                .map(|(i, c)| match self.scaled_value(i, c, scale) {
                    Cell::Float(x) => float_text(x),
                    Cell::Int(n) => n.to_string(),
                    Cell::Text(s) => csv_field(&s),
                    Cell::Empty => String::new(),
                })
                .collect();
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out
    }

    /// `{"meta": ..., "data": [...]}`; non-finite floats become strings.
    pub fn to_json(&self, scale: f64, meta: Value) -> String {
        let data: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (i, c) in row.iter().enumerate() {
                    let v = match self.scaled_value(i, c, scale) {
                        Cell::Float(x) => Number::from_f64(x)
                            .map_or_else(|| Value::String(float_text(x)), Value::Number),
                        Cell::Int(n) => Value::from(n),
                        Cell::Text(s) => Value::String(s),
                        Cell::Empty => Value::Null,
                    };
                    obj.insert(self.columns[i].name.to_string(), v);
                }
                Value::Object(obj)
            })
            .collect();
        let mut doc = Map::new();
        doc.insert("meta".into(), meta);
        doc.insert("data".into(), Value::Array(data));
        let mut s =
            serde_json::to_string_pretty(&Value::Object(doc)).expect("JSON values serialize");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new(&[plain("n"), scaled("T"), plain("label"), plain("ratio")]);
        t.push(vec![
            0usize.into(),
            0.5.into(),
            String::from("a,b").into(),
            None.into(),
        ]);
        t.push(vec![
            1usize.into(),
            f64::INFINITY.into(),
            String::from("Rx(π/2)@2").into(),
            Some(0.1).into(),
        ]);
        t
    }

    #[test]
    fn csv_encoding() {
        let csv = sample().to_csv(2.0);
        assert_eq!(
            csv,
            "n,T,label,ratio\n0,1.0,\"a,b\",\n1,inf,Rx(π/2)@2,0.1\n"
        );
    }

    #[test]
    fn floats_round_trip() {
        for x in [0.1, 1.0 / 3.0, 1e-300, -2.5e17, 10.0 / 13.0] {
            assert_eq!(float_text(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn json_encoding() {
        let s = sample().to_json(1.0, serde_json::json!({"k": 1}));
        let v: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["meta"]["k"], 1);
        assert_eq!(v["data"][0]["T"], 0.5);
        assert_eq!(v["data"][1]["T"], "inf");
        assert!(v["data"][0]["ratio"].is_null());
        let keys: Vec<&String> = v["data"][0].as_object().unwrap().keys().collect();
        assert_eq!(keys, ["n", "T", "label", "ratio"]);
    }
}
