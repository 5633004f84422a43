//! Tabular output with a key/value metadata block.
//!
//! CSV files start with `#key=value` lines followed by a header row. Floats
//! are written with 17 significant digits so a re-read and re-write is
//! byte-identical. The JSON mirror holds the same data as
//! `{"columns", "metadata", "rows"}`.

use serde_json::{Map, Value};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Bool(bool),
    Text(String),
    Empty,
}

impl Cell {
    pub fn csv_text(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format_float(*v),
            Cell::Bool(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => Value::from(*v),
            Cell::Float(v) => serde_json::Number::from_f64(*v + 0.0).map_or(Value::Null, Value::Number),
            Cell::Bool(v) => Value::Bool(*v),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Empty => Value::Null,
        }
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Empty, Into::into)
    }
}

/// Scientific notation with 17 significant digits; `inf`, `-inf`, `nan`
/// for non-finite values. Negative zero is written as zero.
pub fn format_float(v: f64) -> String {
    if v == 0.0 {
        "0.0000000000000000e0".into()
    } else if v.is_finite() {
        format!("{v:.16e}")
    } else if v.is_nan() {
        "nan".into()
    } else if v > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub metadata: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            metadata: Vec::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn meta(&mut self, key: &str, value: impl ToString) {
        let value = value.to_string();
        match self.metadata.iter_mut().find(|(k, _)| k == key) {
            Some(entry) => entry.1 = value,
            None => self.metadata.push((key.to_string(), value)),
        }
    }

    pub fn meta_float(&mut self, key: &str, value: f64) {
        self.meta(key, format_float(value));
    }

    pub fn get_meta(&self, key: &str) -> Option<&str> {
        self.metadata
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.metadata {
            out.push('#');
            out.push_str(k);
            out.push('=');
            out.push_str(v);
            out.push('\n');
        }
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv_text))
                .expect("in-memory write");
        }
        let body = w.into_inner().expect("in-memory flush");
        out.push_str(std::str::from_utf8(&body).expect("utf-8 fields"));
        out
    }

    /// Parses CSV written by [`Table::to_csv`]. Cells come back as text, which
    /// re-serializes to the same bytes.
    pub fn from_csv(text: &str) -> CliResult<Self> {
        let mut metadata = Vec::new();
        let mut body_start = 0;
        for line in text.split_inclusive('\n') {
            let Some(rest) = line.strip_prefix('#') else {
                break;
            };
            let rest = rest.trim_end_matches('\n');
            let (k, v) = rest
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("bad metadata line {line:?}")))?;
            metadata.push((k.to_string(), v.to_string()));
            body_start += line.len();
        }
        let mut r = csv::ReaderBuilder::new()
            .has_headers(true)
            .from_reader(&text.as_bytes()[body_start..]);
        let bad = |e: csv::Error| CliError::Usage(format!("malformed csv: {e}"));
        let columns = r.headers().map_err(bad)?.iter().map(String::from).collect();
        let mut rows = Vec::new();
        for rec in r.records() {
            let rec = rec.map_err(bad)?;
            rows.push(
                rec.iter()
                    .map(|s| if s.is_empty() { Cell::Empty } else { Cell::Text(s.into()) })
                    .collect(),
            );
        }
        Ok(Table { metadata, columns, rows })
    }

    pub fn to_json(&self) -> String {
        let meta: Map<String, Value> = self
            .metadata
            .iter()
            .map(|(k, v)| (k.clone(), Value::String(v.clone())))
            .collect();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Array(r.iter().map(Cell::json).collect()))
            .collect();
        let mut top = Map::new();
        top.insert("columns".into(), Value::from(self.columns.clone()));
        top.insert("metadata".into(), Value::Object(meta));
        top.insert("rows".into(), Value::Array(rows));
        let mut s = serde_json::to_string_pretty(&Value::Object(top)).expect("json value");
        s.push('\n');
        s
    }
}

/// Re-serializes a JSON report; the output matches the input when it was
/// written by [`Table::to_json`].
pub fn reserialize_json(text: &str) -> CliResult<String> {
    let v: Value =
        serde_json::from_str(text).map_err(|e| CliError::Usage(format!("malformed json: {e}")))?;
    let mut s = serde_json::to_string_pretty(&v).expect("json value");
    s.push('\n');
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new(&["k", "lambda", "label", "flag", "opt"]);
        t.meta("version", "0.1.0");
        t.meta("seed", 7);
        t.push(vec![1usize.into(), 0.8.into(), "1|2,3".into(), true.into(), Cell::Empty]);
        t.push(vec![2usize.into(), 0.1f64.into(), "x".into(), false.into(), 1e-300.into()]);
        t
    }

    #[test]
    fn csv_round_trip_is_byte_identical() {
        let csv = sample().to_csv();
        assert!(csv.starts_with("#version=0.1.0\n#seed=7\nk,lambda,label,flag,opt\n"));
        assert!(csv.contains("\"1|2,3\""));
        assert_eq!(Table::from_csv(&csv).unwrap().to_csv(), csv);
    }

    #[test]
    fn json_round_trip_is_byte_identical() {
        let json = sample().to_json();
        assert_eq!(reserialize_json(&json).unwrap(), json);
    }

    #[test]
    fn float_format_keeps_seventeen_digits() {
        assert_eq!(format_float(0.1), "1.0000000000000001e-1");
        assert_eq!(format_float(0.1).parse::<f64>().unwrap(), 0.1);
        assert_eq!(format_float(f64::INFINITY), "inf");
    }

    #[test]
    fn meta_overwrites_existing_key() {
        let mut t = Table::new(&["a"]);
        t.meta("x", 1);
        t.meta("y", 2);
        t.meta("x", 3);
        assert_eq!(t.metadata, vec![("x".into(), "3".into()), ("y".into(), "2".into())]);
    }
}
