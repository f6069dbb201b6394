//! Emission of results as JSON or CSV.

use std::io::Write;
use std::path::Path;

use dp4::{Dp4Error, Result};
use serde_json::{Map, Value};

use crate::config::Format;

/// A command result: a JSON document and the same numbers as a table.
pub struct Output {
    pub json: Value,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Output {
    pub fn new(json: Value, header: &[&str], rows: Vec<Vec<String>>) -> Output {
        Output { json, header: header.iter().map(|s| s.to_string()).collect(), rows }
    }
}

/// Moves every `seconds` field out of the document, so the rest is
/// reproducible, and returns their sum.
fn strip_seconds(v: &mut Value) -> f64 {
    match v {
        Value::Object(m) => {
            let own = m.remove("seconds").and_then(|s| s.as_f64()).unwrap_or(0.0);
            own + m.values_mut().map(strip_seconds).sum::<f64>()
        }
        Value::Array(a) => a.iter_mut().map(strip_seconds).sum(),
        _ => 0.0,
    }
}

pub fn csv_text(header: &[String], rows: &[Vec<String>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Dp4Error::Config(format!("csv: {e}"));
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(r).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Dp4Error::Config(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn emit(mut out: Output, format: Format, path: Option<&Path>, elapsed: f64) -> Result<()> {
    let counted = strip_seconds(&mut out.json);
    let mut doc = match out.json {
        Value::Object(m) => m,
        other => {
            let mut m = Map::new();
            m.insert("result".into(), other);
            m
        }
    };
    let mut timing = Map::new();
    timing.insert("wall_seconds".into(), elapsed.into());
    if counted > 0.0 {
        timing.insert("counting_seconds".into(), counted.into());
    }
    doc.insert("timing".into(), Value::Object(timing));
    let csv = csv_text(&out.header, &out.rows)?;
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    let written = match format {
        Format::Json => {
            let text = serde_json::to_string_pretty(&Value::Object(doc)).expect("serializable");
            writeln!(lock, "{text}")
        }
        Format::Csv => write!(lock, "{csv}"),
    };
    match written {
        // a closed reader (`dp4 ... | head`) is not an error
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
            return Err(Dp4Error::Config(format!("cannot write output: {e}")));
        }
        _ => {}
    }
    if let Some(p) = path {
        std::fs::write(p, csv).map_err(|e| Dp4Error::Config(format!("cannot write {}: {e}", p.display())))?;
    }
    Ok(())
}
