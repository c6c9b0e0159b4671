//! Command results, error classification and exit codes.

use oploc_core::report::Violation;
use oploc_core::{AxiomReport, Error};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] Error),
}

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFICATION: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_RESOURCE: u8 = 3;

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Core(e) => match e {
                Error::Resource(_) | Error::Truncation { .. } => EXIT_RESOURCE,
                Error::NotOperadic(_) | Error::NotAMap(_) | Error::NonCommuting(_) | Error::NotLocalizable(_) => EXIT_VERIFICATION,
                _ => EXIT_INPUT,
            },
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Input(_) => "input",
            CliError::Core(e) => match e {
                Error::Arity { .. } => "arity",
                Error::Truncation { .. } => "truncation",
                Error::IncompleteTable(_) => "incomplete-table",
                Error::Invalid(_) => "invalid",
                Error::ObjectMismatch(_) => "object-mismatch",
                Error::HeightMismatch { .. } => "height-mismatch",
                Error::JunctionMismatch { .. } => "junction-mismatch",
                Error::IndexOutOfRange { .. } => "index-out-of-range",
                Error::NotInW(_) => "not-in-w",
                Error::NotOperadic(_) => "not-operadic",
                Error::NotAMap(_) => "not-a-map",
                Error::NonCommuting(_) => "non-commuting",
                Error::NotLocalizable(_) => "not-localizable",
                Error::Unsupported(_) => "unsupported",
                Error::Resource(_) => "resource",
            },
        }
    }
}

#[derive(Serialize)]
pub struct ViolationOut {
    pub axiom: String,
    pub witness: String,
}

impl From<&Violation> for ViolationOut {
    fn from(v: &Violation) -> Self {
        ViolationOut { axiom: v.axiom.clone(), witness: v.witness.clone() }
    }
}

/// What a command produced: text lines for people, a JSON value for
/// machines, and any violations found.
pub struct Report {
    pub command: String,
    pub lines: Vec<String>,
    pub result: Value,
    pub violations: Vec<ViolationOut>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report { command: command.into(), lines: Vec::new(), result: Value::Null, violations: Vec::new() }
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    pub fn absorb(&mut self, r: &AxiomReport) {
        self.violations.extend(r.violations.iter().map(ViolationOut::from));
    }

    pub fn violation(&mut self, axiom: impl Into<String>, witness: impl Into<String>) {
        self.violations.push(ViolationOut { axiom: axiom.into(), witness: witness.into() });
    }

    pub fn exit_code(&self) -> u8 {
        if self.violations.is_empty() {
            EXIT_OK
        } else {
            EXIT_VERIFICATION
        }
    }

    pub fn status(&self) -> &'static str {
        if self.violations.is_empty() {
            "ok"
        } else {
            "failed"
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "status": self.status(),
            "result": self.result,
            "violations": self.violations,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for l in &self.lines {
            out.push_str(l);
            out.push('\n');
        }
        if !self.violations.is_empty() {
            out.push_str(&format!("FAILED: {} violation(s)\n", self.violations.len()));
            for v in &self.violations {
                out.push_str(&format!("  {}: {}\n", v.axiom, v.witness));
            }
        }
        out
    }
}

pub fn error_json(command: &str, e: &CliError) -> Value {
    let status = if e.exit_code() == EXIT_VERIFICATION { "failed" } else { "error" };
    let mut v = json!({
        "command": command,
        "status": status,
        "error": { "kind": e.kind(), "message": e.to_string() },
        "violations": [],
    });
    if e.exit_code() == EXIT_VERIFICATION {
        v["violations"] = json!([{ "axiom": e.kind(), "witness": e.to_string() }]);
    }
    v
}
