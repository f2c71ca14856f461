//! Byte-stable JSON and CSV artifacts.
//!
//! JSON objects are written with sorted keys. Floats use 17 significant
//! digits; exact scalars are written as text (`p/q`, `c*sqrt(r)`).

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use serde_json::{Number, Value};

use crate::scalar::{format_f64, Arith, Scalar};

/// JSON number with 17 significant digits, `null` when not finite.
pub fn float_value(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let text = format_f64(x);
    serde_json::from_str::<Number>(&text)
        .map(Value::Number)
        .unwrap_or(Value::Null)
}

/// Exact scalars as their text form, floats as numbers.
pub fn scalar_value<S: Scalar>(x: &S) -> Value {
    match S::ARITH {
        Arith::Exact => Value::String(x.to_text()),
        Arith::Float => float_value(x.to_f64()),
    }
}

/// Text cell for CSV output.
pub fn scalar_cell<S: Scalar>(x: &S) -> String {
    match S::ARITH {
        Arith::Exact => x.to_text(),
        Arith::Float => format_f64(x.to_f64()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CsvTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn new(header: &[&str]) -> Self {
        CsvTable {
            header: header.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    pub fn to_bytes(&self) -> io::Result<Vec<u8>> {
        let mut writer = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        writer.write_record(&self.header)?;
        for row in &self.rows {
            writer.write_record(row)?;
        }
        writer.into_inner().map_err(|e| e.into_error())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

/// A report ready to be written: always JSON, optionally a CSV table.
#[derive(Clone, Debug)]
pub struct Artifact {
    pub json: Value,
    pub csv: Option<CsvTable>,
}

impl Artifact {
    pub fn json(json: Value) -> Self {
        Artifact { json, csv: None }
    }

    pub fn render(&self, format: Format) -> io::Result<Vec<u8>> {
        match format {
            Format::Json => {
                let mut bytes = serde_json::to_vec_pretty(&self.json)?;
                bytes.push(b'\n');
                Ok(bytes)
            }
            Format::Csv => match &self.csv {
                Some(table) => table.to_bytes(),
                None => Err(io::Error::new(
                    io::ErrorKind::InvalidInput,
                    "this report has no CSV form",
                )),
            },
        }
    }
}

/// Writes the rendered report to `path`, or to stdout when `path` is `None`.
pub fn emit_report(bytes: &[u8], path: Option<&Path>) -> io::Result<()> {
    match path {
        Some(path) => fs::write(path, bytes),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn floats_keep_seventeen_digits() {
        assert_eq!(float_value(0.1).to_string(), "1.0000000000000001e-1");
        assert_eq!(float_value(0.0).to_string(), "0");
        assert_eq!(float_value(f64::NAN), Value::Null);
    }

    #[test]
    fn keys_come_out_sorted() {
        let artifact = Artifact::json(json!({"zeta": 1, "alpha": 2, "mid": {"b": 1, "a": 2}}));
        let text = String::from_utf8(artifact.render(Format::Json).unwrap()).unwrap();
        let alpha = text.find("alpha").unwrap();
        let mid = text.find("mid").unwrap();
        let zeta = text.find("zeta").unwrap();
        assert!(alpha < mid && mid < zeta);
        assert!(text.find("\"a\"").unwrap() < text.find("\"b\"").unwrap());
    }

    #[test]
    fn csv_uses_lf_and_header() {
        let mut t = CsvTable::new(&["k", "l", "alpha", "alpha_sq"]);
        t.push(vec!["0".into(), "0".into(), "1".into(), "1".into()]);
        let bytes = t.to_bytes().unwrap();
        assert_eq!(bytes, b"k,l,alpha,alpha_sq\n0,0,1,1\n");
        assert!(Artifact::json(json!({})).render(Format::Csv).is_err());
    }
}
