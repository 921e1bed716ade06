//! Rendering of reports as JSON, CSV or plain text.

use std::io::Write;

use clap::ValueEnum;
use serde_json::{Map, Number, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

pub fn round15(x: f64) -> f64 {
    if x.is_finite() {
        format!("{x:.14e}").parse().unwrap_or(x)
    } else {
        x
    }
}

/// Rounds every float to 15 significant digits.
pub fn round_numbers(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round15(n.as_f64().unwrap_or(f64::NAN));
            Number::from_f64(x).map_or(Value::Null, Value::Number)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(round_numbers).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, round_numbers(v))).collect()),
        other => other,
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(map) => {
            for (k, item) in map {
                flatten(&key(k), item, out);
            }
        }
        Value::Array(items) => {
            for (i, item) in items.iter().enumerate() {
                flatten(&key(&i.to_string()), item, out);
            }
        }
        other => out.push((prefix.to_string(), scalar(other))),
    }
}

/// Rows of a homogeneous array of flat objects, if `v` is one.
fn table(v: &Value) -> Option<(Vec<String>, Vec<Vec<String>>)> {
    let items = v.as_array()?;
    let first: &Map<String, Value> = items.first()?.as_object()?;
    let header: Vec<String> = first.keys().cloned().collect();
    let mut rows = Vec::with_capacity(items.len());
    for item in items {
        let obj = item.as_object()?;
        if obj.len() != header.len() {
            return None;
        }
        let mut row = Vec::with_capacity(header.len());
        for h in &header {
            let cell = obj.get(h)?;
            if cell.is_object() || cell.is_array() {
                return None;
            }
            row.push(scalar(cell));
        }
        rows.push(row);
    }
    Some((header, rows))
}

pub fn render(value: impl serde::Serialize, format: Format, out: &mut dyn Write) -> crate::BoxResult<()> {
    let v = round_numbers(serde_json::to_value(value)?);
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &v)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            if let Some((header, rows)) = table(&v) {
                w.write_record(&header)?;
                for row in rows {
                    w.write_record(&row)?;
                }
            } else {
                let mut pairs = Vec::new();
                flatten("", &v, &mut pairs);
                w.write_record(["key", "value"])?;
                for (k, val) in pairs {
                    w.write_record([k, val])?;
                }
            }
            w.flush()?;
        }
        Format::Text => {
            if let Some((header, rows)) = table(&v) {
                writeln!(out, "{}", header.join("\t"))?;
                for row in rows {
                    writeln!(out, "{}", row.join("\t"))?;
                }
            } else {
                let mut pairs = Vec::new();
                flatten("", &v, &mut pairs);
                for (k, val) in pairs {
                    writeln!(out, "{k}: {val}")?;
                }
            }
        }
    }
    Ok(())
}
