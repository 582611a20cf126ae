use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::criteria::{CriterionVerdict, Verdict};

use super::CliError;

/// A CSV cell; floats are written with 17 significant digits.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Text(String),
    Float(f64),
    Int(i64),
}

impl Cell {
    pub fn render(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Int(i) => i.to_string(),
            Cell::Float(x) if x.is_nan() => "nan".into(),
            Cell::Float(x) if x.is_infinite() => if *x > 0.0 { "inf" } else { "-inf" }.into(),
            Cell::Float(x) => format!("{x:.16e}"),
        }
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as i64)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Self { name: name.into(), columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Writes `<name>.csv` with a leading `config_sha256` column.
    pub fn write(&self, dir: &Path, digest: &str) -> Result<(), CliError> {
        let path = dir.join(format!("{}.csv", self.name));
        let mut w = csv::Writer::from_path(&path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        let io = |e: csv::Error| CliError::Io(format!("{}: {e}", path.display()));
        let mut header = vec!["config_sha256".to_string()];
        header.extend(self.columns.iter().cloned());
        w.write_record(&header).map_err(io)?;
        for row in &self.rows {
            let mut rec = vec![digest.to_string()];
            rec.extend(row.iter().map(Cell::render));
            w.write_record(&rec).map_err(io)?;
        }
        w.flush().map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Ok(())
    }
}

/// A verdict with the outcome the registry (or the config) expects.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckedVerdict {
    pub label: String,
    pub expected: Option<Verdict>,
    /// `None` when nothing is expected or the verdict is inconclusive.
    pub matches: Option<bool>,
    pub result: CriterionVerdict,
}

impl CheckedVerdict {
    pub fn new(label: String, expected: Option<Verdict>, result: CriterionVerdict) -> Self {
        let mut c = Self { label, expected, matches: None, result };
        c.recheck();
        c
    }

    pub fn recheck(&mut self) {
        self.matches = match self.expected {
            Some(e) if self.result.verdict.is_definite() => Some(e == self.result.verdict),
            _ => None,
        };
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub tool: String,
    pub version: String,
    pub config_sha256: String,
    pub seed: u64,
}

/// Machine-readable summary written as `report.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub experiment: String,
    pub anchor: String,
    pub provenance: Provenance,
    pub resolution: String,
    pub verdicts: Vec<CheckedVerdict>,
    pub tables: Vec<String>,
    pub mismatches: usize,
    pub exit_code: i32,
}

impl ExperimentReport {
    pub fn write(&self, dir: &Path) -> Result<(), CliError> {
        let path = dir.join("report.json");
        let mut text = serde_json::to_string_pretty(self).map_err(|e| CliError::Io(e.to_string()))?;
        text.push('\n');
        std::fs::write(&path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
    }
}
