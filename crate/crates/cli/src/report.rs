use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// A published reference value.
    Reference,
    /// Obtained by an independent computation or a formula.
    Derived,
    /// Immediate from definitions.
    Trivial,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub observed: Value,
    /// Absent for informational entries, which never fail.
    pub expected: Option<Value>,
    pub provenance: Provenance,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub results: Vec<Check>,
    pub details: BTreeMap<String, Value>,
    pub passed: bool,
    pub timing: Timing,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Timing {
    pub elapsed_ms: u128,
    pub workers: usize,
}

impl RunReport {
    pub fn new(command: &str) -> RunReport {
        RunReport {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            inputs: BTreeMap::new(),
            results: Vec::new(),
            details: BTreeMap::new(),
            passed: true,
            timing: Timing::default(),
        }
    }

    pub fn input(&mut self, key: &str, value: impl Serialize) {
        self.inputs.insert(key.to_string(), serde_json::to_value(value).unwrap_or(Value::Null));
    }

    pub fn detail(&mut self, key: &str, value: impl Serialize) {
        self.details.insert(key.to_string(), serde_json::to_value(value).unwrap_or(Value::Null));
    }

    /// Records observed against expected; equality of the JSON values decides.
    pub fn check<O: Serialize, E: Serialize>(&mut self, name: &str, observed: O, expected: E, provenance: Provenance) {
        let observed = serde_json::to_value(observed).unwrap_or(Value::Null);
        let expected = serde_json::to_value(expected).unwrap_or(Value::Null);
        let pass = observed == expected;
        self.push(name, observed, Some(expected), provenance, pass);
    }

    /// A boolean property expected to hold.
    pub fn holds(&mut self, name: &str, observed: bool, provenance: Provenance) {
        self.push(name, Value::Bool(observed), Some(Value::Bool(true)), provenance, observed);
    }

    pub fn info(&mut self, name: &str, observed: impl Serialize, provenance: Provenance) {
        let observed = serde_json::to_value(observed).unwrap_or(Value::Null);
        self.push(name, observed, None, provenance, true);
    }

    fn push(&mut self, name: &str, observed: Value, expected: Option<Value>, provenance: Provenance, pass: bool) {
        self.passed &= pass;
        self.results.push(Check { name: name.to_string(), observed, expected, provenance, pass });
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.results {
            let status = match (&c.expected, c.pass) {
                (None, _) => "INFO",
                (Some(_), true) => "PASS",
                (Some(_), false) => "FAIL",
            };
            let prov = serde_json::to_value(c.provenance).unwrap();
            let prov = prov.as_str().unwrap_or("");
            match &c.expected {
                Some(e) => out.push_str(&format!("{status} {}: observed {} expected {} [{prov}]\n", c.name, c.observed, e)),
                None => out.push_str(&format!("{status} {}: {} [{prov}]\n", c.name, c.observed)),
            }
        }
        let failed = self.results.iter().filter(|c| !c.pass).count();
        out.push_str(&format!(
            "{}: {} checks, {} failed ({} ms)\n",
            self.command,
            self.results.len(),
            failed,
            self.timing.elapsed_ms
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn checks_compare_json_values() {
        let mut r = RunReport::new("t");
        r.check("a", 3u64, 3i32, Provenance::Reference);
        assert!(r.passed);
        r.info("b", "anything", Provenance::Derived);
        assert!(r.passed);
        r.check("c", vec![1, 2], vec![2, 1], Provenance::Trivial);
        assert!(!r.passed);
        let text = r.render();
        assert!(text.contains("PASS a"));
        assert!(text.contains("INFO b"));
        assert!(text.contains("FAIL c"));
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["results"][0]["provenance"], "reference");
    }
}
