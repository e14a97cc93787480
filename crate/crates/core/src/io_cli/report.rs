//! Reports emitted by the command line tool.

use serde::Serialize;
use serde_json::Value;

use crate::verdict::Verdict;

pub const TOOL: &str = "corkscrew";

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub seed: u64,
    pub window_bump: u32,
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub verdicts: Vec<Verdict>,
}

impl Report {
    pub fn new(command: impl Into<String>, seed: u64, window_bump: u32) -> Self {
        Report {
            tool: TOOL,
            version: env!("CARGO_PKG_VERSION"),
            seed,
            window_bump,
            command: command.into(),
            inputs: Value::Object(Default::default()),
            results: Value::Object(Default::default()),
            verdicts: Vec::new(),
        }
    }

    /// Pretty JSON with a trailing newline; field order is fixed, so output is reproducible.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// One `path: value` line per leaf.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.tool, self.version, self.command);
        flatten("inputs", &self.inputs, &mut out);
        flatten("results", &self.results, &mut out);
        for v in &self.verdicts {
            out.push_str(&format!(
                "verdict: {} m={} {:?} [{}] {}\n",
                v.knot,
                v.m,
                v.conclusion,
                v.rule,
                v.certificate_ref.as_deref().unwrap_or("-")
            ));
            out.push_str(&format!("  reason: {}\n", v.reason));
        }
        out
    }
}

fn flatten(path: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                flatten(&format!("{path}.{k}"), x, out);
            }
        }
        Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let parts: Vec<String> = items.iter().map(scalar).collect();
            out.push_str(&format!("{path}: [{}]\n", parts.join(", ")));
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                flatten(&format!("{path}[{i}]"), x, out);
            }
        }
        other => out.push_str(&format!("{path}: {}\n", scalar(other))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
