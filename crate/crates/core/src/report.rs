//! Versioned JSON reports shared by the command line and the suite.

use std::collections::BTreeMap;
use std::fmt::{Display, Write as _};

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub claim: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

impl Verdict {
    /// Passes when the rendered values agree.
    pub fn eq(claim: impl Into<String>, expected: impl Display, computed: impl Display) -> Verdict {
        let (expected, computed) = (expected.to_string(), computed.to_string());
        let pass = expected == computed;
        Verdict { claim: claim.into(), expected, computed, pass }
    }

    pub fn check(claim: impl Into<String>, expected: impl Display, computed: impl Display, pass: bool) -> Verdict {
        Verdict { claim: claim.into(), expected: expected.to_string(), computed: computed.to_string(), pass }
    }

    pub fn holds(claim: impl Into<String>, pass: bool) -> Verdict {
        Verdict::check(claim, true, pass, pass)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: &'static str,
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub results: Value,
    pub verdicts: Vec<Verdict>,
    pub elapsed_ms: u64,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Report {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.into(),
            inputs: BTreeMap::new(),
            results: Value::Null,
            verdicts: Vec::new(),
            elapsed_ms: 0,
        }
    }

    pub fn input(mut self, key: &str, value: impl Display) -> Report {
        self.inputs.insert(key.into(), value.to_string());
        self
    }

    pub fn with_results<T: Serialize>(mut self, results: &T) -> Report {
        self.results = serde_json::to_value(results).expect("serializable results");
        self
    }

    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn first_failure(&self) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| !v.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable report")
    }

    /// The report with `elapsed_ms` zeroed, for comparing runs.
    pub fn to_json_stable(&self) -> String {
        let mut r = self.clone();
        r.elapsed_ms = 0;
        r.to_json()
    }

    /// Aligned text rendering.
    pub fn to_human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} ({} ms)", self.command, self.elapsed_ms);
        for (k, v) in &self.inputs {
            let _ = writeln!(out, "  {k} = {v}");
        }
        let w = self.verdicts.iter().map(|v| v.claim.chars().count()).max().unwrap_or(0);
        for v in &self.verdicts {
            let mark = if v.pass { "PASS" } else { "FAIL" };
            let _ = write!(out, "{mark}  {:<w$}  {}", v.claim, v.computed);
            if !v.pass {
                let _ = write!(out, " (expected {})", v.expected);
            }
            out.push('\n');
        }
        let _ = writeln!(out, "{}", if self.passed() { "all verdicts pass" } else { "verification failed" });
        out
    }
}

/// Renders a count map as `{k: n, ..}` in key order.
pub fn fmt_census<K: Display, V: Display>(m: &BTreeMap<K, V>) -> String {
    let parts: Vec<String> = m.iter().map(|(k, v)| format!("{k}: {v}")).collect();
    format!("{{{}}}", parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdicts_and_rendering() {
        let mut r = Report::new("demo").input("d", 3);
        r.verdicts.push(Verdict::eq("det", 64, 64));
        assert!(r.passed());
        r.verdicts.push(Verdict::eq("rank", 16, 15));
        assert!(!r.passed());
        assert_eq!(r.first_failure().unwrap().claim, "rank");
        let h = r.to_human();
        assert!(h.contains("FAIL  rank  15 (expected 16)"));
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["schema_version"], "1");
        assert_eq!(v["inputs"]["d"], "3");
    }

    #[test]
    fn census_format() {
        let m: BTreeMap<u32, u64> = [(8, 30), (16, 1)].into_iter().collect();
        assert_eq!(fmt_census(&m), "{8: 30, 16: 1}");
    }
}
