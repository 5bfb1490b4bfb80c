//! Report output: compact JSON with sorted keys, or markdown that prints
//! every leaf value verbatim.

use std::collections::BTreeMap;

use serde_json::{Map, Value};

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: Vec<String>,
    pub result: Value,
    /// Asserted invariants; any `false` turns into exit code 3.
    pub checks: BTreeMap<String, bool>,
}

impl Report {
    pub fn new(command: Vec<String>, result: Value) -> Self {
        Report { command, result, checks: BTreeMap::new() }
    }

    pub fn check(mut self, name: &str, ok: bool) -> Self {
        self.checks.insert(name.to_string(), ok);
        self
    }

    pub fn passed(&self) -> bool {
        self.checks.values().all(|&b| b)
    }

    /// Verbosity 0 emits the result alone; higher levels wrap it with the
    /// command echo and the check flags.
    pub fn to_value(&self, verbosity: u8) -> Value {
        if verbosity == 0 {
            return self.result.clone();
        }
        let mut m = Map::new();
        m.insert("command".into(), Value::from(self.command.clone()));
        m.insert("result".into(), self.result.clone());
        m.insert("checks".into(), serde_json::to_value(&self.checks).expect("bool map"));
        m.insert("passed".into(), Value::Bool(self.passed()));
        Value::Object(m)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Md,
}

pub fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string(v).expect("values serialize"),
        Format::Md => markdown(v),
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("null".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|x| !x.is_object()) => {
            Some(format!("[{}]", items.iter().map(|x| scalar(x).unwrap_or_default()).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn flat_object(v: &Value) -> Option<&Map<String, Value>> {
    v.as_object().filter(|m| m.values().all(|x| scalar(x).is_some()))
}

pub fn markdown(v: &Value) -> String {
    let mut out = String::new();
    block(v, 0, &mut out);
    out
}

fn block(v: &Value, depth: usize, out: &mut String) {
    let indent = "  ".repeat(depth);
    if let Some(s) = scalar(v) {
        out.push_str(&format!("{indent}{s}\n"));
        return;
    }
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{indent}- **{k}**: {s}\n")),
                    None => {
                        out.push_str(&format!("{indent}- **{k}**:\n"));
                        block(x, depth + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            let rows: Option<Vec<&Map<String, Value>>> = items.iter().map(flat_object).collect();
            match rows {
                Some(rows) if !rows.is_empty() => table(&rows, &indent, out),
                _ => {
                    for x in items {
                        out.push_str(&format!("{indent}-\n"));
                        block(x, depth + 1, out);
                    }
                }
            }
        }
        _ => unreachable!("scalars handled above"),
    }
}

fn table(rows: &[&Map<String, Value>], indent: &str, out: &mut String) {
    let mut cols: Vec<&String> = rows.iter().flat_map(|r| r.keys()).collect();
    cols.sort();
    cols.dedup();
    out.push_str(&format!("\n{indent}| {} |\n", cols.iter().map(|c| c.as_str()).collect::<Vec<_>>().join(" | ")));
    out.push_str(&format!("{indent}|{}\n", "---|".repeat(cols.len())));
    for r in rows {
        let cells: Vec<String> = cols.iter().map(|c| r.get(*c).and_then(scalar).unwrap_or_default().replace('|', "\\|")).collect();
        out.push_str(&format!("{indent}| {} |\n", cells.join(" | ")));
    }
    out.push('\n');
}
