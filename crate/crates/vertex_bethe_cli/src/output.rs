//! Report serialization. JSON keeps insertion order; CSV is RFC 4180 with the
//! metadata as leading `#` lines.

use std::io::Write;

use serde_json::{json, Map, Value};

use crate::config::{Format, RunConfig};
use crate::error::CliError;

#[derive(Debug)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Table { columns: columns.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn json_rows(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|r| Value::Object(self.columns.iter().cloned().zip(r.iter().cloned()).collect()))
                .collect(),
        )
    }
}

#[derive(Debug)]
pub struct Report {
    pub metadata: Map<String, Value>,
    /// Key under which the rows appear in JSON.
    pub rows_key: &'static str,
    pub table: Table,
    pub summary: Option<Map<String, Value>>,
}

/// Finite floats as JSON numbers, everything else as `null`.
pub fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null)
}

pub fn base_metadata(cfg: &RunConfig, command: &str) -> Map<String, Value> {
    let p = &cfg.model;
    let mut m = Map::new();
    m.insert("tool".into(), json!(env!("CARGO_PKG_NAME")));
    m.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    m.insert("command".into(), json!(command));
    m.insert(
        "params".into(),
        json!({
            "ell": p.ell(),
            "t": p.t,
            "r": p.r,
            "r_prime": p.r_prime,
            "eta": p.eta(),
            "n_sites": p.n_sites,
        }),
    );
    m.insert(
        "gauge".into(),
        json!({
            "s_plus": [cfg.gauge.s_plus.re, cfg.gauge.s_plus.im],
            "s_minus": [cfg.gauge.s_minus.re, cfg.gauge.s_minus.im],
        }),
    );
    m.insert("seed".into(), json!(cfg.seed));
    m
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(m) => {
            for (k, v) in m {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, v, out);
            }
        }
        other => out.push((prefix.to_string(), cell(other))),
    }
}

impl Report {
    pub fn to_json(&self) -> Result<String, CliError> {
        let mut doc = Map::new();
        doc.insert("metadata".into(), Value::Object(self.metadata.clone()));
        doc.insert(self.rows_key.into(), self.table.json_rows());
        if let Some(s) = &self.summary {
            doc.insert("summary".into(), Value::Object(s.clone()));
        }
        let mut text = serde_json::to_string_pretty(&Value::Object(doc))?;
        text.push('\n');
        Ok(text)
    }

    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut buf = Vec::new();
        let mut meta = Vec::new();
        flatten("", &Value::Object(self.metadata.clone()), &mut meta);
        if let Some(s) = &self.summary {
            flatten("summary", &Value::Object(s.clone()), &mut meta);
        }
        for (k, v) in meta {
            write!(buf, "# {k}: {v}\r\n")?;
        }
        {
            let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(&mut buf);
            w.write_record(&self.table.columns)?;
            for row in &self.table.rows {
                w.write_record(row.iter().map(cell))?;
            }
            w.flush()?;
        }
        Ok(String::from_utf8(buf).expect("CSV output is UTF-8"))
    }

    pub fn emit(&self, cfg: &RunConfig) -> Result<(), CliError> {
        let text = match cfg.format {
            Format::Json => self.to_json()?,
            Format::Csv => self.to_csv()?,
        };
        match &cfg.out {
            Some(path) => std::fs::write(path, text)?,
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(text.as_bytes())?;
                out.flush()?;
            }
        }
        Ok(())
    }
}
