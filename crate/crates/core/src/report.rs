//! Structured run reports with deterministic rendering.
//!
//! A [`RunReport`] collects what a command ran, digests of the inputs it
//! consumed, the values it produced, and the pass/fail outcomes of any
//! checks. The JSON form is byte-identical across runs with the same inputs
//! and seed: field order is fixed by declaration and wall-clock timing is
//! kept out of it (the text form may show it).

use std::time::Duration;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::hopf::CheckReport;

/// Digest of one consumed input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InputDigest {
    pub kind: String,
    pub name: String,
    pub sha256: String,
}

/// One produced value, rendered exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResultEntry {
    pub label: String,
    pub value: String,
}

/// One named check outcome.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckEntry {
    pub name: String,
    pub pass: bool,
}

/// Everything a command run wants to tell the caller.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Vec<InputDigest>,
    pub results: Vec<ResultEntry>,
    pub checks: Vec<CheckEntry>,
    pub passed: usize,
    pub failed: usize,
    #[serde(skip)]
    pub elapsed: Option<Duration>,
}

/// Hex SHA-256 of a byte string.
pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

impl RunReport {
    pub fn new(command: impl Into<String>) -> RunReport {
        RunReport {
            command: command.into(),
            inputs: Vec::new(),
            results: Vec::new(),
            checks: Vec::new(),
            passed: 0,
            failed: 0,
            elapsed: None,
        }
    }

    /// Records an input by content digest.
    pub fn add_input(&mut self, kind: impl Into<String>, name: impl Into<String>, content: &str) {
        self.inputs.push(InputDigest {
            kind: kind.into(),
            name: name.into(),
            sha256: sha256_hex(content.as_bytes()),
        });
    }

    pub fn add_result(&mut self, label: impl Into<String>, value: impl Into<String>) {
        self.results.push(ResultEntry {
            label: label.into(),
            value: value.into(),
        });
    }

    pub fn add_check(&mut self, name: impl Into<String>, pass: bool) {
        if pass {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
        self.checks.push(CheckEntry {
            name: name.into(),
            pass,
        });
    }

    /// Absorbs a library check report, prefixing each check name.
    pub fn absorb(&mut self, prefix: &str, report: &CheckReport) {
        for check in &report.checks {
            let name = if prefix.is_empty() {
                check.name.clone()
            } else {
                format!("{prefix}: {}", check.name)
            };
            self.add_check(name, check.pass);
        }
    }

    pub fn all_pass(&self) -> bool {
        self.failed == 0
    }

    /// Deterministic JSON rendering (timing excluded).
    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    /// Human-readable rendering; includes timing when present.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("$ {}\n", self.command));
        for input in &self.inputs {
            out.push_str(&format!(
                "input  {} {} sha256={}\n",
                input.kind,
                input.name,
                &input.sha256[..16]
            ));
        }
        for result in &self.results {
            out.push_str(&format!("result {} = {}\n", result.label, result.value));
        }
        for check in &self.checks {
            let status = if check.pass { "pass" } else { "FAIL" };
            out.push_str(&format!("check  {}: {status}\n", check.name));
        }
        if !self.checks.is_empty() {
            out.push_str(&format!(
                "summary: {} passed, {} failed\n",
                self.passed, self.failed
            ));
        }
        if let Some(elapsed) = self.elapsed {
            out.push_str(&format!("time: {:.1} ms\n", elapsed.as_secs_f64() * 1e3));
        }
        out
    }
}
