//! Fixed, locale-free rendering of result documents as CSV or JSON.

use std::io::Write;

use serde_json::{Map, Number, Value as Json};

pub const SCHEMA: &str = "planar-atom/v1";
pub const SIGNIFICANT_DIGITS: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// One cell of an output row.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Num(f64),
    Int(i64),
    Bool(bool),
    Text(String),
    Missing,
}

impl Value {
    pub fn opt(v: Option<f64>) -> Value {
        v.map_or(Value::Missing, Value::Num)
    }

    fn csv(&self) -> String {
        match self {
            Value::Num(x) => format_g(*x, SIGNIFICANT_DIGITS),
            Value::Int(i) => i.to_string(),
            Value::Bool(b) => b.to_string(),
            Value::Text(s) => s.clone(),
            Value::Missing => String::new(),
        }
    }

    fn json(&self) -> Json {
        match self {
            Value::Num(x) => format_g(*x, SIGNIFICANT_DIGITS)
                .parse::<f64>()
                .ok()
                .and_then(Number::from_f64)
                .map_or(Json::Null, Json::Number),
            Value::Int(i) => Json::from(*i),
            Value::Bool(b) => Json::Bool(*b),
            Value::Text(s) => Json::String(s.clone()),
            Value::Missing => Json::Null,
        }
    }
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Num(x)
    }
}

impl From<usize> for Value {
    fn from(i: usize) -> Self {
        Value::Int(i as i64)
    }
}

impl From<u32> for Value {
    fn from(i: u32) -> Self {
        Value::Int(i as i64)
    }
}

impl From<bool> for Value {
    fn from(b: bool) -> Self {
        Value::Bool(b)
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Text(s.to_owned())
    }
}

impl From<String> for Value {
    fn from(s: String) -> Self {
        Value::Text(s)
    }
}

/// A table with document-level metadata.
#[derive(Clone, Debug, Default)]
pub struct Document {
    pub kind: String,
    pub metadata: Vec<(String, Value)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
}

impl Document {
    pub fn new(kind: impl Into<String>, columns: &[&'static str]) -> Self {
        Document {
            kind: kind.into(),
            columns: columns.to_vec(),
            ..Default::default()
        }
    }

    pub fn meta(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.metadata.push((key.to_owned(), value.into()));
        self
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    /// `# schema=… kind=… key=value…`, then the header, then data rows.
    pub fn to_csv(&self) -> String {
        let mut first = format!("# schema={SCHEMA} kind={}", self.kind);
        for (k, v) in &self.metadata {
            first.push_str(&format!(" {k}={}", v.csv()));
        }
        let mut out = first.into_bytes();
        out.push(b'\n');
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row.iter().map(Value::csv)).expect("in-memory write");
        }
        let bytes = w.into_inner().expect("in-memory flush");
        String::from_utf8(bytes).expect("ascii output")
    }

    pub fn to_json(&self) -> String {
        let mut root = Map::new();
        root.insert("schema".into(), Json::from(SCHEMA));
        root.insert("kind".into(), Json::from(self.kind.as_str()));
        let meta: Map<String, Json> = self.metadata.iter().map(|(k, v)| (k.clone(), v.json())).collect();
        root.insert("metadata".into(), Json::Object(meta));
        let rows: Vec<Json> = self
            .rows
            .iter()
            .map(|row| {
                Json::Object(
                    self.columns
                        .iter()
                        .zip(row)
                        .map(|(c, v)| (c.to_string(), v.json()))
                        .collect(),
                )
            })
            .collect();
        root.insert("rows".into(), Json::Array(rows));
        let mut s = serde_json::to_string_pretty(&Json::Object(root)).expect("json values are finite or null");
        s.push('\n');
        s
    }
}

/// C `%.{digits}g`: shortest of fixed and exponent notation, trailing zeros removed.
pub fn format_g(x: f64, digits: usize) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_owned()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Writes to `path`, or stdout when `None`.
pub fn emit(text: &str, path: Option<&std::path::Path>) -> crate::error::Result<()> {
    use crate::error::CliError;
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| CliError::Io {
            path: p.display().to_string(),
            source,
        }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_printf_g() {
        let cases = [
            (-0.999455682, "-0.999455682"),
            (1.5, "1.5"),
            (-743.3633384951234, "-743.363338495"),
            (0.0080714228, "0.0080714228"),
            (1.23456789012345e-5, "1.23456789012e-05"),
            (2e-6, "2e-06"),
            (123456789012345.0, "1.23456789012e+14"),
            (100.0, "100"),
            (0.0001, "0.0001"),
            (0.0, "0"),
            (999999999999.5, "1e+12"),
        ];
        for (x, s) in cases {
            assert_eq!(format_g(x, 12), s, "{x}");
        }
        assert_eq!(format_g(f64::NAN, 12), "nan");
    }

    #[test]
    fn csv_layout() {
        let mut doc = Document::new("test", &["a", "b", "c"]).meta("version", "1");
        doc.push(vec![Value::Num(0.1), Value::Missing, Value::from("x")]);
        assert_eq!(doc.to_csv(), "# schema=planar-atom/v1 kind=test version=1\na,b,c\n0.1,,x\n");
    }

    #[test]
    fn json_mirrors_columns() {
        let mut doc = Document::new("test", &["energy_ry", "converged", "paper_value"]);
        doc.push(vec![Value::Num(-1.0 / 3.0), Value::Bool(true), Value::Missing]);
        let v: Json = serde_json::from_str(&doc.to_json()).unwrap();
        assert_eq!(v["schema"], "planar-atom/v1");
        let row = &v["rows"][0];
        assert_eq!(row["energy_ry"].as_f64().unwrap(), -0.333333333333);
        assert_eq!(row["converged"], true);
        assert!(row["paper_value"].is_null());
        let keys: Vec<&String> = row.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["energy_ry", "converged", "paper_value"]);
    }
}
