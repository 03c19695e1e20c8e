//! Structured check reports shared by the verifiers and the command line.

use crate::algebra::DomainElem;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    HypothesisNotMet,
}

impl Status {
    pub fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    /// The statement being checked, in words.
    pub reference: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lhs: Option<DomainElem>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rhs: Option<DomainElem>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckRecord {
    pub fn compare(id: impl Into<String>, reference: &str, ok: bool, lhs: DomainElem, rhs: DomainElem) -> Self {
        CheckRecord { id: id.into(), reference: reference.into(), status: Status::from_bool(ok), lhs: Some(lhs), rhs: Some(rhs), note: None }
    }

    /// Equality of two serialized values.
    pub fn equal(id: impl Into<String>, reference: &str, lhs: DomainElem, rhs: DomainElem) -> Self {
        let ok = lhs == rhs;
        Self::compare(id, reference, ok, lhs, rhs)
    }

    pub fn flag(id: impl Into<String>, reference: &str, ok: bool, note: impl Into<String>) -> Self {
        CheckRecord { id: id.into(), reference: reference.into(), status: Status::from_bool(ok), lhs: None, rhs: None, note: Some(note.into()) }
    }

    pub fn not_met(id: impl Into<String>, reference: &str, why: impl Into<String>) -> Self {
        CheckRecord { id: id.into(), reference: reference.into(), status: Status::HypothesisNotMet, lhs: None, rhs: None, note: Some(why.into()) }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub records: Vec<CheckRecord>,
    /// Computed values for commands that are not pure checks.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub data: Option<serde_json::Value>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report { command: command.into(), records: Vec::new(), data: None }
    }

    pub fn push(&mut self, r: CheckRecord) {
        self.records.push(r);
    }

    pub fn extend(&mut self, rs: impl IntoIterator<Item = CheckRecord>) {
        self.records.extend(rs);
    }

    pub fn failures(&self) -> usize {
        self.records.iter().filter(|r| r.status == Status::Fail).count()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }

    pub fn from_json(s: &str) -> Result<Report> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    /// One line per record.
    pub fn pretty(&self) -> String {
        let mut out = format!("# {}\n", self.command);
        for r in &self.records {
            let tag = match r.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::HypothesisNotMet => "N/A ",
            };
            let _ = write!(out, "{} {:<28} {}", tag, r.id, r.reference);
            if let (Some(l), Some(rh)) = (&r.lhs, &r.rhs) {
                let _ = write!(out, "  [{} | {}]", l.pretty(), rh.pretty());
            }
            if let Some(n) = &r.note {
                let _ = write!(out, "  ({})", n);
            }
            out.push('\n');
        }
        let _ = writeln!(out, "{} records, {} failing", self.records.len(), self.failures());
        out
    }
}
