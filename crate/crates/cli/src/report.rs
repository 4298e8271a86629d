//! Reports, exit statuses and their rendering.

use std::fmt::Write as _;

use monofan::Error;
use serde_json::{json, Map, Value};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_IO: u8 = 2;
pub const EXIT_CAP: u8 = 3;

/// What a command produced: a status and a JSON payload.
#[derive(Debug)]
pub struct Report {
    pub command: &'static str,
    pub exit: u8,
    pub body: Value,
}

impl Report {
    pub fn pass(command: &'static str, body: Value) -> Report {
        Report { command, exit: EXIT_OK, body }
    }

    /// A check that ran to completion and found a violation.
    pub fn fail(command: &'static str, body: Value) -> Report {
        Report { command, exit: EXIT_FAILED, body }
    }

    pub fn status(&self) -> &'static str {
        match self.exit {
            EXIT_OK => "pass",
            EXIT_FAILED => "fail",
            EXIT_IO => "input-error",
            _ => "resource-cap",
        }
    }

    pub fn to_value(&self) -> Value {
        let mut out = Map::new();
        out.insert("command".into(), json!(self.command));
        out.insert("status".into(), json!(self.status()));
        match &self.body {
            Value::Object(m) => out.extend(m.clone()),
            Value::Null => {}
            other => {
                out.insert("result".into(), other.clone());
            }
        }
        Value::Object(out)
    }
}

/// An error that stops a command, with the exit status it maps to.
#[derive(Debug)]
pub struct Failure {
    pub exit: u8,
    pub witness: Value,
}

impl Failure {
    pub fn io(path: &str, e: std::io::Error) -> Failure {
        Failure { exit: EXIT_IO, witness: json!({ "error": "io", "path": path, "message": e.to_string() }) }
    }

    pub fn parse(message: impl Into<String>) -> Failure {
        Failure { exit: EXIT_IO, witness: json!({ "error": "parse", "message": message.into() }) }
    }

    pub fn into_report(self, command: &'static str) -> Report {
        Report { command, exit: self.exit, body: self.witness }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let message = e.to_string();
        let (exit, kind, extra) = match &e {
            Error::Parse(_) => (EXIT_IO, "parse", json!({})),
            Error::ResourceCap { what, cap, trace } => {
                (EXIT_CAP, "resource-cap", json!({ "what": what, "cap": cap, "trace": trace }))
            }
            Error::AmbientMismatch { expected, found } => {
                (EXIT_FAILED, "ambient-mismatch", json!({ "expected": expected, "found": found }))
            }
            Error::NotFaceClosed { cone, face } => {
                (EXIT_FAILED, "not-face-closed", json!({ "cone": cone.to_string(), "face": face.to_string() }))
            }
            Error::InteriorOverlap { a, b } => {
                (EXIT_FAILED, "interior-overlap", json!({ "a": a.to_string(), "b": b.to_string() }))
            }
            Error::UnionFaceViolation { cone, face } => {
                (EXIT_FAILED, "union-face-violation", json!({ "cone": cone.to_string(), "face": face.to_string() }))
            }
            Error::NotInSupport(c) => (EXIT_FAILED, "not-in-support", json!({ "cone": c.to_string() })),
            Error::NotPointed(c) => (EXIT_FAILED, "not-pointed", json!({ "cone": c.to_string() })),
            Error::UnknownStratum(s) => (EXIT_FAILED, "unknown-stratum", json!({ "stratum": s.to_string() })),
            Error::NotSubstratum { sub, sup } => {
                (EXIT_FAILED, "not-substratum", json!({ "sub": sub.to_string(), "sup": sup.to_string() }))
            }
            Error::ChainMismatch(a, b) => {
                (EXIT_FAILED, "chain-mismatch", json!({ "a": a.to_string(), "b": b.to_string() }))
            }
            Error::NotConvex(i) => (EXIT_FAILED, "not-convex", json!({ "position": i })),
            Error::NotSimplicial(s) => (EXIT_FAILED, "not-simplicial", json!({ "stratum": s.to_string() })),
            Error::MissingTau(s) => (EXIT_FAILED, "missing-tau", json!({ "stratum": s.to_string() })),
            Error::CriteriaDisagree(a, b) => {
                (EXIT_FAILED, "criteria-disagree", json!({ "a": a.to_string(), "b": b.to_string() }))
            }
            Error::OverlapInconsistency { sub, sup } => {
                (EXIT_FAILED, "overlap-inconsistency", json!({ "sub": sub.to_string(), "sup": sup.to_string() }))
            }
            Error::NotOverStratum(j, i) => {
                (EXIT_FAILED, "not-over-stratum", json!({ "stratum": j, "base": i.to_string() }))
            }
            Error::NonCommuting(a, b) => (EXIT_FAILED, "non-commuting", json!({ "a": a, "b": b })),
            Error::NotNilpotent => (EXIT_FAILED, "not-nilpotent", json!({})),
            Error::SupportMismatch => (EXIT_FAILED, "support-mismatch", json!({})),
            Error::InvalidSemiComplex(_) => (EXIT_FAILED, "invalid-semicomplex", json!({})),
            Error::InvalidPath(_) => (EXIT_FAILED, "invalid-path", json!({})),
            Error::CheckFailed(_) => (EXIT_FAILED, "check-failed", json!({})),
            Error::Invalid(_) => (EXIT_FAILED, "invalid", json!({})),
        };
        let mut witness = json!({ "error": kind, "message": message });
        if let (Value::Object(w), Value::Object(x)) = (&mut witness, extra) {
            w.extend(x);
        }
        Failure { exit, witness }
    }
}

/// A plain rendering: one `key: value` line per top level field, nested
/// values as compact JSON.
pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    if let Value::Object(m) = v {
        for (k, x) in m {
            match x {
                Value::String(s) => writeln!(out, "{k}: {s}"),
                Value::Array(items) if items.iter().all(Value::is_object) && !items.is_empty() => {
                    let _ = writeln!(out, "{k}:");
                    for item in items {
                        let _ = writeln!(out, "  - {item}");
                    }
                    Ok(())
                }
                other => writeln!(out, "{k}: {other}"),
            }
            .expect("writing to a string");
        }
    } else {
        writeln!(out, "{v}").expect("writing to a string");
    }
    out
}
