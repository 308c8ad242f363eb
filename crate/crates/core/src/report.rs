//! Verification reports: one record per check with its witness, plus the
//! inputs, bounds and audit trail needed to reproduce the run.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::fixedpoint::AuditEntry;
use crate::verdict::{Outcome, Verdict};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// JSON Schema (draft 2020-12) every report validates against.
pub const REPORT_SCHEMA: &str = include_str!("../schema/report.schema.json");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub expected: Outcome,
    pub outcome: Outcome,
    pub detail: String,
    /// The witness behind the outcome; `null` only for unknown outcomes.
    pub witness: Value,
    /// Whether the witness passed an independent re-check.
    pub reverified: Option<bool>,
}

impl Check {
    pub fn new(name: impl Into<String>, expected: Outcome, outcome: Outcome) -> Self {
        Check {
            name: name.into(),
            expected,
            outcome,
            detail: String::new(),
            witness: Value::Null,
            reverified: None,
        }
    }

    /// A check whose outcome is that of `verdict`, with the verdict's
    /// payload as witness.
    pub fn from_verdict<P: Serialize, R: Serialize>(
        name: impl Into<String>,
        expected: Outcome,
        verdict: &Verdict<P, R>,
    ) -> Self {
        let mut c = Check::new(name, expected, verdict.outcome());
        c.witness = to_value(verdict);
        if let Verdict::Unknown(e) = verdict {
            c.detail = format!("bound {} exhausted: {}", e.bound, e.reason);
        }
        c
    }

    /// A yes/no fact: proved when it holds, refuted otherwise.
    pub fn fact(name: impl Into<String>, holds: bool, witness: impl Serialize) -> Self {
        let outcome = if holds {
            Outcome::Proved
        } else {
            Outcome::Refuted
        };
        let mut c = Check::new(name, Outcome::Proved, outcome);
        c.witness = to_value(&witness);
        c
    }

    pub fn detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }

    pub fn witness(mut self, witness: impl Serialize) -> Self {
        self.witness = to_value(&witness);
        self
    }

    pub fn reverified(mut self, ok: bool) -> Self {
        self.reverified = Some(ok);
        self
    }

    /// The outcome is the expected one and any re-check succeeded.
    pub fn passed(&self) -> bool {
        self.outcome == self.expected && self.reverified != Some(false)
    }
}

fn to_value(v: &impl Serialize) -> Value {
    serde_json::to_value(v).unwrap_or_else(|e| Value::String(format!("unserializable: {e}")))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub case_id: String,
    pub version: String,
    pub inputs: BTreeMap<String, Value>,
    pub bounds: BTreeMap<String, Value>,
    pub checks: Vec<Check>,
    pub audit: Vec<AuditEntry>,
    pub elapsed_ms: f64,
}

impl Report {
    pub fn new(case_id: impl Into<String>) -> Self {
        Report {
            case_id: case_id.into(),
            version: VERSION.to_string(),
            inputs: BTreeMap::new(),
            bounds: BTreeMap::new(),
            checks: Vec::new(),
            audit: Vec::new(),
            elapsed_ms: 0.0,
        }
    }

    pub fn input(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.inputs.insert(key.to_string(), to_value(&value));
        self
    }

    pub fn bound(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.bounds.insert(key.to_string(), to_value(&value));
        self
    }

    pub fn push(&mut self, check: Check) -> &mut Self {
        self.checks.push(check);
        self
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    /// 0 when every check is as expected, 1 when a check that should be
    /// proved came out refuted (or failed its re-check), 2 when a check
    /// ended unknown.
    pub fn exit_code(&self) -> i32 {
        let failed = self
            .checks
            .iter()
            .any(|c| !c.passed() && c.outcome != Outcome::Unknown);
        if failed {
            1
        } else if self.checks.iter().any(|c| !c.passed()) {
            2
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "case {} (topofix {})", self.case_id, self.version);
        for (k, v) in &self.bounds {
            let _ = writeln!(out, "  bound {k} = {v}");
        }
        for c in &self.checks {
            let mark = if c.passed() { "ok  " } else { "FAIL" };
            let re = match c.reverified {
                Some(true) => ", re-verified",
                Some(false) => ", RE-CHECK FAILED",
                None => "",
            };
            let _ = write!(
                out,
                "  [{mark}] {}: {} (expected {}{re})",
                c.name, c.outcome, c.expected
            );
            if !c.detail.is_empty() {
                let _ = write!(out, " - {}", c.detail);
            }
            out.push('\n');
        }
        for a in &self.audit {
            let _ = writeln!(
                out,
                "  audit: cover {} absorbed at n = {} by element {} (verified: {})",
                a.cover_index, a.n_i, a.element_index, a.verified
            );
        }
        let n = self.checks.len();
        let _ = writeln!(
            out,
            "  {n} check{}, exit code {}, {:.1} ms",
            if n == 1 { "" } else { "s" },
            self.exit_code(),
            self.elapsed_ms
        );
        out
    }
}

/// Structural checks beyond the schema: Proved checks carry a witness that
/// passed its re-check, and the audit trail is fully verified.
pub fn validate_report(report: &Report) -> Result<(), String> {
    if report.checks.is_empty() {
        return Err(format!("{}: no checks", report.case_id));
    }
    for c in &report.checks {
        if c.outcome == Outcome::Proved && (c.witness.is_null() || c.reverified.is_none()) {
            return Err(format!("{}: proved check `{}` has no re-checked witness", report.case_id, c.name));
        }
    }
    if let Some(a) = report.audit.iter().find(|a| !a.verified) {
        return Err(format!("{}: audit entry for cover {} not verified", report.case_id, a.cover_index));
    }
    Ok(())
}
