use std::fmt;

use serde::Serialize;

/// One side-by-side comparison inside a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub claim: String,
    pub left: String,
    pub right: String,
    pub pass: bool,
}

/// The outcome of a check: the identities compared and informational values.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub subject: String,
    pub values: Vec<(String, String)>,
    pub comparisons: Vec<Comparison>,
}

impl Report {
    pub fn new(subject: impl Into<String>) -> Self {
        Report {
            subject: subject.into(),
            ..Default::default()
        }
    }

    pub fn note(&mut self, name: &str, value: &impl fmt::Display) {
        self.values.push((name.to_string(), value.to_string()));
    }

    pub fn compare(
        &mut self,
        claim: &str,
        left: &impl fmt::Display,
        right: &impl fmt::Display,
        pass: bool,
    ) {
        self.comparisons.push(Comparison {
            claim: claim.to_string(),
            left: left.to_string(),
            right: right.to_string(),
            pass,
        });
    }

    pub fn passed(&self) -> bool {
        self.comparisons.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "subject": self.subject,
            "values": self.values.iter().map(|(k, v)| serde_json::json!({"name": k, "value": v})).collect::<Vec<_>>(),
            "comparisons": self.comparisons,
            "verdict": if self.passed() { "pass" } else { "fail" },
        })
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.subject)?;
        for (k, v) in &self.values {
            writeln!(f, "  {k} = {v}")?;
        }
        for c in &self.comparisons {
            writeln!(f, "  [{}] {}", if c.pass { "PASS" } else { "FAIL" }, c.claim)?;
            writeln!(f, "      left:  {}", c.left)?;
            writeln!(f, "      right: {}", c.right)?;
        }
        write!(f, "verdict: {}", if self.passed() { "pass" } else { "fail" })
    }
}
