//! Rendering helpers shared by the subcommands.

use bounded_dyck::BigInt;
use clap::ValueEnum;
use serde_json::{json, Map, Value};

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

/// A JSON integer of any size.
pub fn big(n: &BigInt) -> Value {
    serde_json::from_str(&n.to_string()).expect("an integer literal is valid JSON")
}

pub fn bigs(ns: &[BigInt]) -> Value {
    Value::Array(ns.iter().map(big).collect())
}

/// One JSON document: `schema_version`, `command`, then the payload fields.
pub fn record(command: &str, payload: Value) -> String {
    let mut doc = Map::new();
    doc.insert("schema_version".into(), json!(SCHEMA_VERSION));
    doc.insert("command".into(), json!(command));
    if let Value::Object(fields) = payload {
        doc.extend(fields);
    } else {
        doc.insert("payload".into(), payload);
    }
    let mut out = serde_json::to_string_pretty(&Value::Object(doc)).expect("JSON values always serialize");
    out.push('\n');
    out
}

/// CSV with a header row.
pub fn csv_table<S: AsRef<str>>(header: &[S], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header.iter().map(AsRef::as_ref)).expect("in-memory write");
    for row in rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("CSV of UTF-8 fields")
}

/// Text rendering of a path, with ε shown explicitly.
pub fn show_path(s: &str) -> &str {
    if s.is_empty() {
        "ε"
    } else {
        s
    }
}
