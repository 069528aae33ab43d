//! Check reports and their serialisations.
//!
//! JSON keys come out in a fixed order and rationals are always strings, so
//! reruns with the same seed produce byte-identical documents.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub input: String,
    pub expected: String,
    pub got: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Failure {
    pub fn new(input: impl Into<String>, expected: impl Into<String>, got: impl Into<String>) -> Self {
        Failure { input: input.into(), expected: expected.into(), got: got.into(), witness: None }
    }

    pub fn with_witness(mut self, w: impl Into<String>) -> Self {
        self.witness = Some(w.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub params: BTreeMap<String, String>,
    pub seed: u64,
    pub samples: u64,
    /// Check-specific summary values (counts, witnesses of the happy path).
    #[serde(default)]
    pub details: BTreeMap<String, Value>,
    pub failures: Vec<Failure>,
    pub verdict: Verdict,
}

impl CheckReport {
    pub fn new(check: impl Into<String>, seed: u64, samples: u64) -> Self {
        CheckReport {
            check: check.into(),
            params: BTreeMap::new(),
            seed,
            samples,
            details: BTreeMap::new(),
            failures: Vec::new(),
            verdict: Verdict::Pass,
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.params.insert(key.to_owned(), value.to_string());
        self
    }

    pub fn detail(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.details.insert(key.to_owned(), value.into());
        self
    }

    pub fn fail(&mut self, f: Failure) {
        self.failures.push(f);
        self.verdict = Verdict::Fail;
    }

    /// Records a failure unless `ok`.
    pub fn expect(&mut self, ok: bool, f: impl FnOnce() -> Failure) {
        if !ok {
            self.fail(f());
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialises");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "check: {}", self.check);
        for (k, v) in &self.params {
            let _ = writeln!(out, "  {k} = {v}");
        }
        let _ = writeln!(out, "seed: {:#x}", self.seed);
        let _ = writeln!(out, "samples: {}", self.samples);
        for (k, v) in &self.details {
            let v = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            let _ = writeln!(out, "  {k}: {v}");
        }
        let _ = writeln!(out, "failures: {}", self.failures.len());
        for f in self.failures.iter().take(20) {
            let _ = write!(out, "  - {}: expected {}, got {}", f.input, f.expected, f.got);
            if let Some(w) = &f.witness {
                let _ = write!(out, " (witness {w})");
            }
            out.push('\n');
        }
        if self.failures.len() > 20 {
            let _ = writeln!(out, "  ... {} more", self.failures.len() - 20);
        }
        let _ = writeln!(out, "verdict: {}", self.verdict.as_str());
        out
    }
}
