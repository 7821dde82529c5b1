use std::fmt::Write as _;

use serde_json::{json, Value};
use spinlift::Error;

use crate::args::Format;

pub const SCHEMA_VERSION: u32 = 1;

/// How a command ended, mapped onto the process exit code.
#[derive(Debug)]
pub enum Outcome {
    /// exit 0
    Ok(Value),
    /// exit 1; the result still carries the full report
    VerificationFailed(Value),
}

#[derive(Debug)]
pub enum Failure {
    /// exit 2
    Input(String),
    /// exit 3
    Numerical(String),
    /// exit 1
    Defect(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Defect(_) => 1,
            Self::Input(_) => 2,
            Self::Numerical(_) => 3,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Self::Defect(_) => "defect",
            Self::Input(_) => "invalid_input",
            Self::Numerical(_) => "numerical_domain",
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Self::Input(m) | Self::Numerical(m) | Self::Defect(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::AbscissaViolation { .. }
            | Error::Pole
            | Error::GammaPole(_)
            | Error::RootModulus(_)
            | Error::NotCritical(_) => Self::Numerical(msg),
            Error::Defect(_) => Self::Defect(msg),
            _ => Self::Input(msg),
        }
    }
}

pub fn envelope(command: &str, result: Value) -> Value {
    json!({ "schema_version": SCHEMA_VERSION, "command": command, "result": result })
}

pub fn error_envelope(command: &str, f: &Failure) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "error": { "kind": f.kind(), "message": f.message() },
    })
}

pub fn render(doc: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(doc).expect("JSON values serialize") + "\n",
        Format::Table => {
            let mut out = String::new();
            flatten(doc, "", &mut out);
            out
        }
    }
}

fn flatten(v: &Value, path: &str, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let p = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                flatten(x, &p, out);
            }
        }
        Value::Array(xs) if !xs.is_empty() => {
            for (i, x) in xs.iter().enumerate() {
                flatten(x, &format!("{path}[{i}]"), out);
            }
        }
        Value::String(s) => writeln!(out, "{path} = {s}").unwrap(),
        other => writeln!(out, "{path} = {other}").unwrap(),
    }
}
