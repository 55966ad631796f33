use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

use clap::ValueEnum;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

/// Severity of one processed item; the process exit code is the maximum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Ok = 0,
    CheckFailure = 1,
    InputError = 2,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::CheckFailure => "check_failure",
            Status::InputError => "input_error",
        }
    }
}

/// One report object. `input` and `status` are always present; failures carry
/// an `error` message.
#[derive(Debug, Clone)]
pub struct Entry {
    pub status: Status,
    pub fields: Map<String, Value>,
}

impl Entry {
    pub fn new(input: &str, status: Status, fields: Map<String, Value>) -> Self {
        let mut e = Entry { status, fields };
        e.fields.insert("input".into(), input.into());
        e.fields.insert("status".into(), status.as_str().into());
        e
    }

    pub fn failed(input: &str, status: Status, error: impl Into<String>) -> Self {
        let mut fields = Map::new();
        fields.insert("error".into(), Value::String(error.into()));
        Entry::new(input, status, fields)
    }

    pub fn into_value(self) -> Value {
        Value::Object(self.fields)
    }
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub status: Status,
    pub document: Value,
}

impl Outcome {
    pub fn single(entry: Entry) -> Self {
        Outcome {
            status: entry.status,
            document: entry.into_value(),
        }
    }

    pub fn batch(entries: Vec<Entry>) -> Self {
        Outcome {
            status: worst(&entries),
            document: Value::Array(entries.into_iter().map(Entry::into_value).collect()),
        }
    }

    pub fn exit_code(&self) -> u8 {
        self.status as u8
    }
}

pub fn worst(entries: &[Entry]) -> Status {
    entries.iter().map(|e| e.status).max().unwrap_or(Status::Ok)
}

pub fn emit(outcome: &Outcome, format: Format, out: Option<&Path>) -> io::Result<()> {
    let text = match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&outcome.document).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Table => table(&outcome.document),
    };
    match out {
        Some(path) => fs::write(path, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

/// Flattened `path: value` listing, one block per report.
fn table(doc: &Value) -> String {
    let mut out = String::new();
    let blocks: Vec<&Value> = match doc {
        Value::Array(items) => items.iter().collect(),
        Value::Object(m) if m.get("entries").is_some_and(Value::is_array) => {
            let mut v: Vec<&Value> = m["entries"].as_array().unwrap().iter().collect();
            v.extend(m.get("summary"));
            v
        }
        other => vec![other],
    };
    for (i, block) in blocks.into_iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let title = block.get("input").and_then(Value::as_str);
        let status = block.get("status").and_then(Value::as_str);
        if let (Some(t), Some(s)) = (title, status) {
            let _ = writeln!(out, "{t}  [{s}]");
        }
        let mut rows = Vec::new();
        flatten("", block, &mut rows);
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in rows {
            if k == "input" || k == "status" {
                continue;
            }
            let _ = writeln!(out, "  {k:<width$}  {v}");
        }
    }
    out
}

fn flatten(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                flatten(&join(k), x, rows);
            }
        }
        Value::Array(xs) if xs.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let items: Vec<String> = xs.iter().map(scalar).collect();
            rows.push((prefix.to_string(), items.join(" ")));
        }
        Value::Array(xs) => {
            for (i, x) in xs.iter().enumerate() {
                flatten(&join(&i.to_string()), x, rows);
            }
        }
        other => rows.push((prefix.to_string(), scalar(other))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}
