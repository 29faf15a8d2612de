//! Run configuration: a flat `key=value` file, overridden by flags.

use std::collections::BTreeMap;
use std::str::FromStr;

use mslcob::{FieldDescriptor, FieldKind};

use crate::{Failure, GlobalArgs};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = Failure;

    fn from_str(s: &str) -> Result<Format, Failure> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(Failure::usage(format!("unknown format {s:?} (expected text, json or csv)"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub truncation: u32,
    pub field: FieldDescriptor,
    pub format: Format,
    pub suite: Option<String>,
}

pub const DEFAULT_TRUNCATION: u32 = 12;
pub const MAX_TRUNCATION: u32 = 16;

/// Parse `key=value` lines; `#` starts a comment.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>, Failure> {
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) =
            line.split_once('=').ok_or_else(|| Failure::usage(format!("config line {}: expected key=value", i + 1)))?;
        let key = k.trim().to_string();
        if !["truncation", "field", "char", "format", "suite"].contains(&key.as_str()) {
            return Err(Failure::usage(format!("config line {}: unknown key {key:?}", i + 1)));
        }
        out.insert(key, v.trim().to_string());
    }
    Ok(out)
}

impl RunConfig {
    pub fn resolve(args: &GlobalArgs) -> Result<RunConfig, Failure> {
        let file = match &args.config {
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| Failure::internal(format!("cannot read {}: {e}", p.display())))?;
                parse_config(&text)?
            }
            None => BTreeMap::new(),
        };
        let truncation = match (args.truncation, file.get("truncation")) {
            (Some(n), _) => n,
            (None, Some(s)) => s.parse().map_err(|_| Failure::usage(format!("bad truncation {s:?}")))?,
            (None, None) => DEFAULT_TRUNCATION,
        };
        if !(2..=MAX_TRUNCATION).contains(&truncation) {
            return Err(Failure::usage(format!("truncation must be in 2..={MAX_TRUNCATION}, got {truncation}")));
        }
        let kind_name = args.field.clone().or_else(|| file.get("field").cloned()).unwrap_or_else(|| "c".into());
        let kind: FieldKind = kind_name.parse().map_err(|e: mslcob::Error| Failure::usage(e.to_string()))?;
        let e = match (args.characteristic, file.get("char")) {
            (Some(e), _) => Some(e),
            (None, Some(s)) => Some(s.parse().map_err(|_| Failure::usage(format!("bad char {s:?}")))?),
            (None, None) => None,
        };
        let field = match e {
            Some(e) => FieldDescriptor::new(kind, e).map_err(|e| Failure::usage(e.to_string()))?,
            None => FieldDescriptor::default_for(kind),
        };
        let format = match args.format.as_deref().or(file.get("format").map(String::as_str)) {
            Some(s) => s.parse()?,
            None => Format::Text,
        };
        Ok(RunConfig { truncation, field, format, suite: file.get("suite").cloned() })
    }
}
