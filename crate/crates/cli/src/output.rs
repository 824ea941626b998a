//! Machine-readable output records and their three renderings.
//!
//! One record per invocation. JSON is a single pretty-printed document that
//! validates against `schema/output.schema.json`; CSV follows RFC 4180 (the
//! remainder command renders its row table, everything else renders the
//! results table); text is a line-oriented human view. All renderings are
//! byte-deterministic: no timestamps, no environment echoes.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub results: Vec<ResultEntry>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rows: Option<Vec<RemainderRow>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultEntry {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub method: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub exact: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error_estimate: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

impl ResultEntry {
    pub fn named(name: impl Into<String>) -> Self {
        ResultEntry {
            name: name.into(),
            method: None,
            value: None,
            exact: None,
            error_estimate: None,
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn with_value(mut self, value: f64) -> Self {
        self.value = Some(value);
        self
    }

    pub fn with_exact(mut self, exact: impl Into<String>) -> Self {
        self.exact = Some(exact.into());
        self
    }

    pub fn with_method(mut self, method: impl Into<String>) -> Self {
        self.method = Some(method.into());
        self
    }

    pub fn with_error(mut self, error: f64) -> Self {
        self.error_estimate = Some(error);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RemainderRow {
    pub k: u32,
    pub partial_sum: String,
    pub remainder: String,
    pub identity_ok: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

pub fn render(record: &OutputRecord, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s =
                serde_json::to_string_pretty(record).expect("record serialization is total");
            s.push('\n');
            s
        }
        Format::Csv => render_csv(record),
        Format::Text => render_text(record),
    }
}

fn inputs_echo(inputs: &BTreeMap<String, String>) -> String {
    inputs
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(";")
}

fn render_csv(record: &OutputRecord) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    if let Some(rows) = &record.rows {
        writer
            .write_record(["k", "partial_sum", "remainder", "identity_ok"])
            .expect("in-memory write");
        for row in rows {
            writer
                .write_record([
                    row.k.to_string(),
                    row.partial_sum.clone(),
                    row.remainder.clone(),
                    row.identity_ok.to_string(),
                ])
                .expect("in-memory write");
        }
    } else {
        writer
            .write_record([
                "command",
                "inputs",
                "name",
                "method",
                "value",
                "exact",
                "error_estimate",
                "note",
            ])
            .expect("in-memory write");
        let echo = inputs_echo(&record.inputs);
        for entry in &record.results {
            writer
                .write_record([
                    record.command.clone(),
                    echo.clone(),
                    entry.name.clone(),
                    entry.method.clone().unwrap_or_default(),
                    entry.value.map(|v| v.to_string()).unwrap_or_default(),
                    entry.exact.clone().unwrap_or_default(),
                    entry
                        .error_estimate
                        .map(|e| format!("{e:e}"))
                        .unwrap_or_default(),
                    entry.note.clone().unwrap_or_default(),
                ])
                .expect("in-memory write");
        }
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush"))
        .expect("csv output is utf-8")
}

fn render_text(record: &OutputRecord) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "command: {}", record.command);
    for (k, v) in &record.inputs {
        let _ = writeln!(out, "input {k} = {v}");
    }
    for entry in &record.results {
        let _ = write!(out, "{}:", entry.name);
        let note_only = entry.exact.is_none() && entry.value.is_none();
        if let Some(exact) = &entry.exact {
            let _ = write!(out, " {exact}");
            if let Some(v) = entry.value {
                let _ = write!(out, " ({v})");
            }
        } else if let Some(v) = entry.value {
            let _ = write!(out, " {v}");
        }
        if let Some(m) = &entry.method {
            let _ = write!(out, " [{m}]");
        }
        if let Some(e) = entry.error_estimate {
            let _ = write!(out, " +/- {e:e}");
        }
        if let Some(n) = &entry.note {
            if note_only {
                let _ = write!(out, " {n}");
            } else {
                let _ = write!(out, " -- {n}");
            }
        }
        let _ = writeln!(out);
    }
    if let Some(rows) = &record.rows {
        for row in rows {
            let _ = writeln!(
                out,
                "k={} partial_sum={} remainder={} identity_ok={}",
                row.k, row.partial_sum, row.remainder, row.identity_ok
            );
        }
    }
    out
}
