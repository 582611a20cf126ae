use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::means::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails,
    Inconclusive,
}

impl Verdict {
    pub fn is_definite(self) -> bool {
        self != Verdict::Inconclusive
    }

    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Holds
        } else {
            Verdict::Fails
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

/// Outcome of a numerical criterion with the data it was decided on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionVerdict {
    pub criterion_id: String,
    pub verdict: Verdict,
    pub summary: String,
    pub evidence: BTreeMap<String, Value>,
    pub tolerances: Tolerances,
}

impl CriterionVerdict {
    pub fn new(id: &str, verdict: Verdict, summary: impl Into<String>, tol: &Tolerances) -> Self {
        Self {
            criterion_id: id.to_string(),
            verdict,
            summary: summary.into(),
            evidence: BTreeMap::new(),
            tolerances: *tol,
        }
    }

    pub fn with(mut self, key: &str, value: impl Serialize) -> Self {
        self.evidence
            .insert(key.to_string(), serde_json::to_value(value).unwrap_or(Value::Null));
        self
    }

    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }
}
