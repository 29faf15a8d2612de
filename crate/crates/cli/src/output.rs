//! Rendering in the three output formats.

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

use crate::config::Format;
use crate::Failure;

pub struct Emit {
    pub json: String,
    pub text: String,
    pub csv: String,
    pub code: u8,
    pub force: Option<Format>,
}

impl Emit {
    pub fn new<T: Serialize + ?Sized>(value: &T, text: String, csv: String) -> Result<Emit, Failure> {
        Ok(Emit { json: to_json(value)?, text, csv, code: 0, force: None })
    }

    pub fn render(&self, format: Format) -> &str {
        match self.force.unwrap_or(format) {
            Format::Text => &self.text,
            Format::Json => &self.json,
            Format::Csv => &self.csv,
        }
    }
}

pub fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String, Failure> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Failure::internal(format!("json: {e}")))?;
    s.push('\n');
    Ok(s)
}

pub fn bigint<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// One CSV record.
pub fn csv_line(fields: &[&str]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(fields).expect("writing to memory");
    String::from_utf8(w.into_inner().expect("writing to memory")).expect("utf-8 input")
}
