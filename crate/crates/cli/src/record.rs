//! Flat key/value records and their CSV, JSON-lines and human renderings.

use std::fmt::Write as _;

use clap::ValueEnum;
use dn2_core::{CPoint, Value};

/// Output encoding selected by `--format`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Jsonl,
    Human,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Num(f64),
    Int(u64),
    Bool(bool),
    Text(String),
    /// Rendered as the bare token `pole`.
    Pole,
}

impl From<f64> for Field {
    fn from(v: f64) -> Self {
        Field::Num(v)
    }
}

impl From<usize> for Field {
    fn from(v: usize) -> Self {
        Field::Int(v as u64)
    }
}

impl From<bool> for Field {
    fn from(v: bool) -> Self {
        Field::Bool(v)
    }
}

impl From<&str> for Field {
    fn from(v: &str) -> Self {
        Field::Text(v.to_string())
    }
}

impl From<String> for Field {
    fn from(v: String) -> Self {
        Field::Text(v)
    }
}

/// 17 significant digits, enough to round-trip any `f64`.
pub fn format_num(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{v:.16e}")
    }
}

impl Field {
    fn plain(&self) -> String {
        match self {
            Field::Num(v) => format_num(*v),
            Field::Int(v) => v.to_string(),
            Field::Bool(v) => v.to_string(),
            Field::Text(s) => s.clone(),
            Field::Pole => "pole".into(),
        }
    }

    fn json(&self) -> String {
        match self {
            Field::Num(v) if v.is_finite() => format_num(*v),
            Field::Num(v) => json_string(&format_num(*v)),
            Field::Int(v) => v.to_string(),
            Field::Bool(v) => v.to_string(),
            Field::Text(s) => json_string(s),
            Field::Pole => json_string("pole"),
        }
    }
}

fn json_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Ordered key/value pairs describing one computation.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Record {
    fields: Vec<(String, Field)>,
}

impl Record {
    pub fn new() -> Self {
        Record::default()
    }

    pub fn with(mut self, key: impl Into<String>, value: impl Into<Field>) -> Self {
        self.push(key, value);
        self
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl Into<Field>) {
        self.fields.push((key.into(), value.into()));
    }

    /// Adds `{prefix}_re` and `{prefix}_im`, or `pole` in both.
    pub fn push_complex(&mut self, prefix: &str, v: Value<CPoint>) {
        let (re, im) = match v {
            Value::Finite(z) => (Field::Num(z.re), Field::Num(z.im)),
            Value::Pole => (Field::Pole, Field::Pole),
        };
        self.push(format!("{prefix}_re"), re);
        self.push(format!("{prefix}_im"), im);
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.fields.iter().map(|(k, _)| k.as_str())
    }

    pub fn get(&self, key: &str) -> Option<&Field> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    fn csv_row(&self) -> String {
        let cells: Vec<String> = self.fields.iter().map(|(_, v)| v.plain()).collect();
        cells.join(",")
    }

    fn json_line(&self) -> String {
        let body: Vec<String> = self
            .fields
            .iter()
            .map(|(k, v)| format!("{}:{}", json_string(k), v.json()))
            .collect();
        format!("{{{}}}", body.join(","))
    }
}

/// Renders records in the requested format, one line per record for CSV and
/// JSON lines. CSV starts a new header whenever the key set changes.
pub fn render(records: &[Record], format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Csv => {
            let mut header: Option<Vec<&str>> = None;
            for r in records {
                let keys: Vec<&str> = r.keys().collect();
                if header.as_ref() != Some(&keys) {
                    out.push_str(&keys.join(","));
                    out.push('\n');
                    header = Some(keys);
                }
                out.push_str(&r.csv_row());
                out.push('\n');
            }
        }
        Format::Jsonl => {
            for r in records {
                out.push_str(&r.json_line());
                out.push('\n');
            }
        }
        Format::Human => {
            for (i, r) in records.iter().enumerate() {
                if i > 0 {
                    out.push('\n');
                }
                let width = r.keys().map(str::len).max().unwrap_or(0);
                for (k, v) in &r.fields {
                    let _ = writeln!(out, "{k:<width$}  {}", v.plain());
                }
            }
        }
    }
    out
}
