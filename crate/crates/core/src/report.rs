//! Machine-readable results. Output is deterministic: values are kept in a
//! sorted map and no timings are recorded.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::check::{all_passed, Check};

pub const SCHEMA: &str = "ncdisc-report/1";

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    pub instance: String,
    pub field: String,
    pub passed: bool,
    pub checks: Vec<Check>,
    /// Named results such as canonical polynomials, rendered as strings.
    pub values: BTreeMap<String, String>,
}

impl Report {
    pub fn new(command: impl Into<String>, instance: impl Into<String>, field: impl Into<String>) -> Self {
        Report {
            schema: SCHEMA,
            command: command.into(),
            instance: instance.into(),
            field: field.into(),
            passed: true,
            checks: Vec::new(),
            values: BTreeMap::new(),
        }
    }

    pub fn check(&mut self, c: Check) {
        self.checks.push(c);
        self.passed = all_passed(&self.checks);
    }

    pub fn checks(&mut self, cs: impl IntoIterator<Item = Check>) {
        for c in cs {
            self.check(c);
        }
    }

    pub fn value(&mut self, key: impl Into<String>, v: impl Into<String>) {
        self.values.insert(key.into(), v.into());
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises") + "\n"
    }

    /// Plain-text rendering: values, then one line per check.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.values {
            out.push_str(&format!("{k} = {v}\n"));
        }
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            if c.detail.is_empty() {
                out.push_str(&format!("[{mark}] {}\n", c.name));
            } else {
                out.push_str(&format!("[{mark}] {}: {}\n", c.name, c.detail));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn passed_tracks_checks() {
        let mut r = Report::new("disc", "x", "rational");
        r.check(Check::pass("a", ""));
        assert!(r.passed);
        r.check(Check::fail("b", "why"));
        assert!(!r.passed);
        assert!(r.to_text().contains("[FAIL] b: why"));
    }

    #[test]
    fn json_is_stable() {
        let mut r = Report::new("disc", "x", "rational");
        r.value("z", "1");
        r.value("a", "2");
        let j = r.to_json();
        assert_eq!(j, r.to_json());
        assert!(j.find("\"a\"").unwrap() < j.find("\"z\"").unwrap());
        assert!(j.contains(SCHEMA));
    }
}
