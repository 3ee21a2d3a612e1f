use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use superquad::linalg::format_scalar;
use superquad::{Matrix, Scalar};

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input_sha256: Option<String>,
    pub status: &'static str,
    pub checks: Vec<Check>,
    pub properties: BTreeMap<String, Value>,
    pub outputs: BTreeMap<String, Value>,
}

impl Report {
    pub fn new(command: Vec<String>, input: Option<&str>) -> Self {
        Self {
            schema: 1,
            command,
            input_sha256: input.map(|t| hex(&Sha256::digest(t.as_bytes()))),
            status: "pass",
            checks: Vec::new(),
            properties: BTreeMap::new(),
            outputs: BTreeMap::new(),
        }
    }

    pub fn check(&mut self, name: &str, pass: bool, witness: Option<Vec<String>>) {
        self.checks.push(Check {
            name: name.to_string(),
            pass,
            witness,
            detail: None,
        });
    }

    pub fn check_detail(&mut self, name: &str, pass: bool, witness: Option<Vec<String>>, detail: String) {
        self.checks.push(Check {
            name: name.to_string(),
            pass,
            witness,
            detail: Some(detail),
        });
    }

    pub fn prop(&mut self, key: &str, value: impl Into<Value>) {
        self.properties.insert(key.to_string(), value.into());
    }

    pub fn output(&mut self, key: &str, value: impl Into<Value>) {
        self.outputs.insert(key.to_string(), value.into());
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn finish(mut self) -> Self {
        self.status = if self.passed() { "pass" } else { "fail" };
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("status: {}\n", self.status);
        for c in &self.checks {
            out.push_str(&format!("check {}: {}", c.name, if c.pass { "pass" } else { "FAIL" }));
            if let Some(w) = &c.witness {
                out.push_str(&format!(" at ({})", w.join(", ")));
            }
            if let Some(d) = &c.detail {
                out.push_str(&format!(" - {d}"));
            }
            out.push('\n');
        }
        for (k, v) in &self.properties {
            out.push_str(&format!("{k} = {v}\n"));
        }
        for (k, v) in &self.outputs {
            match v {
                Value::String(s) => out.push_str(&format!("--- {k}\n{s}")),
                other => out.push_str(&format!("--- {k}\n{other}\n")),
            }
            if !out.ends_with('\n') {
                out.push('\n');
            }
        }
        out
    }
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

pub fn vector_json(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(format_scalar(x))).collect())
}

pub fn matrix_json(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|r| vector_json(m.row(r))).collect())
}
