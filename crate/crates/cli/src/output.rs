//! Column-oriented reports and their JSON, CSV and plain renderings.

use serde_json::{json, Map, Value};

use u21zeta::exactmath::{format_rational, Rational};

use crate::config::Format;

/// Version tag written into every JSON report.
pub const SCHEMA: &str = "u21zeta-cli/1";

#[derive(Debug, Clone)]
pub enum Cell {
    Null,
    Bool(bool),
    Int(i64),
    Float(f64),
    Text(String),
    Rational(Rational),
    Floats(Vec<f64>),
}

impl Cell {
    fn to_json(&self) -> Value {
        match self {
            Cell::Null => Value::Null,
            Cell::Bool(b) => json!(b),
            Cell::Int(n) => json!(n),
            Cell::Float(x) => float_json(*x),
            Cell::Text(s) => json!(s),
            Cell::Rational(q) => json!(format_rational(q)),
            Cell::Floats(v) => Value::Array(v.iter().map(|x| float_json(*x)).collect()),
        }
    }

    fn to_text(&self) -> String {
        match self {
            Cell::Null => String::new(),
            Cell::Bool(b) => b.to_string(),
            Cell::Int(n) => n.to_string(),
            Cell::Float(x) => format!("{x:e}"),
            Cell::Text(s) => s.clone(),
            Cell::Rational(q) => format_rational(q),
            Cell::Floats(v) => v.iter().map(|x| format!("{x:e}")).collect::<Vec<_>>().join(";"),
        }
    }
}

fn float_json(x: f64) -> Value {
    serde_json::Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null)
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}
impl From<i64> for Cell {
    fn from(n: i64) -> Self {
        Cell::Int(n)
    }
}
impl From<u32> for Cell {
    fn from(n: u32) -> Self {
        Cell::Int(n as i64)
    }
}
impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}
impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}
impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}
impl From<Rational> for Cell {
    fn from(q: Rational) -> Self {
        Cell::Rational(q)
    }
}
impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(o: Option<T>) -> Self {
        o.map_or(Cell::Null, Into::into)
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: &'static str,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    /// Set by verification commands; `Some(false)` maps to exit code 1.
    pub passed: Option<bool>,
}

impl Report {
    pub fn new(command: &'static str, columns: &[&str]) -> Self {
        Report { command, columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new(), passed: None }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.json(),
            Format::Csv => self.csv(),
            Format::Plain => self.plain(),
        }
    }

    fn json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Object(self.columns.iter().cloned().zip(r.iter().map(Cell::to_json)).collect::<Map<_, _>>()))
            .collect();
        let mut top = Map::new();
        top.insert("schema".into(), json!(SCHEMA));
        top.insert("command".into(), json!(self.command));
        if let Some(p) = self.passed {
            top.insert("passed".into(), json!(p));
        }
        top.insert("rows".into(), Value::Array(rows));
        let mut s = serde_json::to_string_pretty(&Value::Object(top)).expect("values serialize");
        s.push('\n');
        s
    }

    fn csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r.iter().map(Cell::to_text)).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 cells")
    }

    /// One `key: value` block per row when there are few rows, an aligned
    /// table otherwise.
    fn plain(&self) -> String {
        let mut out = String::new();
        if self.rows.len() <= 2 {
            let width = self.columns.iter().map(String::len).max().unwrap_or(0);
            for (n, r) in self.rows.iter().enumerate() {
                if n > 0 {
                    out.push('\n');
                }
                for (c, v) in self.columns.iter().zip(r) {
                    out += &format!("{c:<width$}  {}\n", v.to_text());
                }
            }
        } else {
            let cells: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(Cell::to_text).collect()).collect();
            let widths: Vec<usize> = (0..self.columns.len())
                .map(|k| cells.iter().map(|r| r[k].len()).chain([self.columns[k].len()]).max().unwrap_or(0))
                .collect();
            let line = |items: Vec<&str>| {
                let mut l = items.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect::<Vec<_>>().join("  ");
                l.truncate(l.trim_end().len());
                l + "\n"
            };
            out += &line(self.columns.iter().map(String::as_str).collect());
            for r in &cells {
                out += &line(r.iter().map(String::as_str).collect());
            }
        }
        if let Some(p) = self.passed {
            out += if p { "result: PASS\n" } else { "result: FAIL\n" };
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use u21zeta::exactmath::rat;

    fn sample() -> Report {
        let mut r = Report::new("demo", &["name", "value", "ratio"]);
        r.push(vec!["a,b".into(), 0.5.into(), rat(1, 18).into()]);
        r.push(vec!["c".into(), f64::NAN.into(), Cell::Null]);
        r
    }

    #[test]
    fn json_has_schema_and_exact_rationals() {
        let v: Value = serde_json::from_str(&sample().render(Format::Json)).unwrap();
        assert_eq!(v["schema"], SCHEMA);
        assert_eq!(v["rows"][0]["ratio"], "1/18");
        assert!(v["rows"][1]["value"].is_null());
    }

    #[test]
    fn csv_quotes_and_keeps_header() {
        let s = sample().render(Format::Csv);
        assert!(s.starts_with("name,value,ratio\n\"a,b\",5e-1,1/18\n"), "{s}");
        let empty = Report::new("demo", &["x", "y"]).render(Format::Csv);
        assert_eq!(empty, "x,y\n");
    }
}
