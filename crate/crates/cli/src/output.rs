//! Ordered records and tables, rendered as JSON, CSV or aligned text.

use std::fmt::Write as _;

use crate::config::Format;

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Num(f64),
    Int(i64),
    Bool(bool),
    Str(String),
    Null,
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Num(x)
    }
}

impl From<usize> for Value {
    fn from(x: usize) -> Self {
        Value::Int(x as i64)
    }
}

impl From<u32> for Value {
    fn from(x: u32) -> Self {
        Value::Int(x as i64)
    }
}

impl From<bool> for Value {
    fn from(x: bool) -> Self {
        Value::Bool(x)
    }
}

impl From<&str> for Value {
    fn from(x: &str) -> Self {
        Value::Str(x.to_string())
    }
}

impl From<String> for Value {
    fn from(x: String) -> Self {
        Value::Str(x)
    }
}

impl<T: Into<Value>> From<Option<T>> for Value {
    fn from(x: Option<T>) -> Self {
        x.map_or(Value::Null, Into::into)
    }
}

fn non_finite(x: f64) -> &'static str {
    if x.is_nan() {
        "nan"
    } else if x > 0.0 {
        "inf"
    } else {
        "-inf"
    }
}

impl Value {
    fn json(&self) -> String {
        match self {
            Value::Num(x) if x.is_finite() => serde_json::to_string(x).expect("finite float"),
            Value::Num(x) => format!("\"{}\"", non_finite(*x)),
            Value::Int(i) => i.to_string(),
            Value::Bool(b) => b.to_string(),
            Value::Str(s) => serde_json::to_string(s).expect("string"),
            Value::Null => "null".into(),
        }
    }

    fn csv(&self) -> String {
        match self {
            Value::Num(x) if x.is_finite() => format!("{x:.16e}"),
            Value::Num(x) => non_finite(*x).into(),
            Value::Int(i) => i.to_string(),
            Value::Bool(b) => b.to_string(),
            Value::Str(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
            Value::Str(s) => s.clone(),
            Value::Null => String::new(),
        }
    }

    fn text(&self) -> String {
        match self {
            Value::Num(x) if !x.is_finite() => non_finite(*x).into(),
            Value::Num(x) if *x == 0.0 => "0".into(),
            Value::Num(x) if (1e-4..1e6).contains(&x.abs()) => format!("{x:.8}"),
            Value::Num(x) => format!("{x:.6e}"),
            Value::Int(i) => i.to_string(),
            Value::Bool(b) => if *b { "yes" } else { "no" }.into(),
            Value::Str(s) => s.clone(),
            Value::Null => "-".into(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Record(pub Vec<(String, Value)>);

impl Record {
    pub fn new() -> Self {
        Self::default()
    }

    #[cfg(test)]
    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.0.push((key.to_string(), value.into()));
        self
    }

    pub fn push(&mut self, key: &str, value: impl Into<Value>) {
        self.0.push((key.to_string(), value.into()));
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Output {
    Record(Record),
    Table(Table),
}

impl Output {
    /// Rows prefixed with `prefix` columns; a record becomes a single row.
    pub fn into_table(self) -> Table {
        match self {
            Output::Table(t) => t,
            Output::Record(r) => {
                let (columns, row): (Vec<_>, Vec<_>) = r.0.into_iter().unzip();
                Table {
                    columns,
                    rows: vec![row],
                }
            }
        }
    }

    pub fn render(&self, format: Format) -> String {
        match (self, format) {
            (Output::Record(r), Format::Json) => json_object(&r.0) + "\n",
            (Output::Record(r), Format::Text) => {
                let width = r.0.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                r.0.iter().fold(String::new(), |mut s, (k, v)| {
                    let _ = writeln!(s, "{k:<width$}  {}", v.text());
                    s
                })
            }
            (Output::Record(_), Format::Csv) => Output::Table(self.clone().into_table()).render(format),
            (Output::Table(t), Format::Json) => {
                let rows: Vec<String> = t
                    .rows
                    .iter()
                    .map(|row| {
                        let pairs: Vec<(String, Value)> = t.columns.iter().cloned().zip(row.iter().cloned()).collect();
                        format!("  {}", json_object(&pairs))
                    })
                    .collect();
                if rows.is_empty() {
                    "[]\n".into()
                } else {
                    format!("[\n{}\n]\n", rows.join(",\n"))
                }
            }
            (Output::Table(t), Format::Csv) => {
                let mut s = t.columns.join(",") + "\n";
                for row in &t.rows {
                    s += &row.iter().map(Value::csv).collect::<Vec<_>>().join(",");
                    s.push('\n');
                }
                s
            }
            (Output::Table(t), Format::Text) => {
                let cells: Vec<Vec<String>> = t.rows.iter().map(|r| r.iter().map(Value::text).collect()).collect();
                let widths: Vec<usize> = t
                    .columns
                    .iter()
                    .enumerate()
                    .map(|(i, c)| cells.iter().map(|r| r[i].len()).chain([c.len()]).max().unwrap_or(0))
                    .collect();
                let line = |items: Vec<&str>| -> String {
                    items
                        .iter()
                        .zip(&widths)
                        .map(|(s, w)| format!("{s:>w$}"))
                        .collect::<Vec<_>>()
                        .join("  ")
                        .trim_end()
                        .to_string()
                        + "\n"
                };
                let mut s = line(t.columns.iter().map(String::as_str).collect());
                for r in &cells {
                    s += &line(r.iter().map(String::as_str).collect());
                }
                s
            }
        }
    }
}

fn json_object(pairs: &[(String, Value)]) -> String {
    let body: Vec<String> = pairs
        .iter()
        .map(|(k, v)| format!("{}: {}", serde_json::to_string(k).expect("key"), v.json()))
        .collect();
    format!("{{{}}}", body.join(", "))
}
