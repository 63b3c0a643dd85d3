//! Pass/fail reports shared by the library checks and the command-line tool.

use serde::Serialize;
use serde_json::Value;
use std::collections::BTreeMap;
use std::fmt::Write;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Assertion {
    /// Short slug naming the property verified.
    pub tag: String,
    pub statement: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct Report {
    pub command: String,
    pub assertions: Vec<Assertion>,
    /// Computed quantities; rationals are `"a/b"` strings.
    pub values: BTreeMap<String, Value>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report { command: command.to_string(), ..Default::default() }
    }

    pub fn check(&mut self, tag: &str, statement: &str, passed: bool, detail: impl Into<String>) -> bool {
        self.assertions.push(Assertion {
            tag: tag.to_string(),
            statement: statement.to_string(),
            passed,
            detail: detail.into(),
        });
        passed
    }

    pub fn value(&mut self, key: &str, v: impl Into<Value>) {
        self.values.insert(key.to_string(), v.into());
    }

    pub fn extend(&mut self, other: Report) {
        self.assertions.extend(other.assertions);
        self.values.extend(other.values);
    }

    pub fn passed(&self) -> bool {
        self.assertions.iter().all(|a| a.passed)
    }

    pub fn failures(&self) -> Vec<&Assertion> {
        self.assertions.iter().filter(|a| !a.passed).collect()
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "# {}", self.command).unwrap();
        for a in &self.assertions {
            write!(s, "[{}] {}: {}", if a.passed { "PASS" } else { "FAIL" }, a.tag, a.statement).unwrap();
            if !a.detail.is_empty() {
                write!(s, " ({})", a.detail).unwrap();
            }
            s.push('\n');
        }
        for (k, v) in &self.values {
            match v {
                Value::String(t) => writeln!(s, "{k} = {t}").unwrap(),
                other => writeln!(s, "{k} = {other}").unwrap(),
            }
        }
        let failed = self.failures().len();
        writeln!(s, "summary: {} checks, {} failed", self.assertions.len(), failed).unwrap();
        s
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialises");
        s.push('\n');
        s
    }
}
