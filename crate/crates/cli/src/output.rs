use std::io::Write;
use std::process::ExitCode;

use catoptrix_core::{CatoptricError, ComplexPoint};
use serde_json::{json, Value};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] CatoptricError),
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.code(),
            CliError::Io { .. } => "IoError",
        }
    }
}

/// One command's output: `{command, inputs, results, diagnostics, status}`.
pub struct Record {
    command: &'static str,
    inputs: Value,
    outcome: Result<(Value, Value), CliError>,
    /// Replaces the JSON on stdout (CSV sent to `-`).
    raw_stdout: Option<String>,
}

impl Record {
    pub fn new(command: &'static str, inputs: Value, outcome: Result<(Value, Value), CliError>) -> Self {
        Self {
            command,
            inputs,
            outcome,
            raw_stdout: None,
        }
    }

    pub fn with_raw_stdout(mut self, text: Option<String>) -> Self {
        self.raw_stdout = text;
        self
    }

    pub fn to_json(&self) -> Value {
        let (results, diagnostics, status) = match &self.outcome {
            Ok((r, d)) => (r.clone(), d.clone(), "ok".to_string()),
            Err(e) => (
                Value::Null,
                json!({ "error": { "code": e.code(), "message": e.to_string() } }),
                e.code().to_string(),
            ),
        };
        let mut v = json!({
            "command": self.command,
            "inputs": self.inputs,
            "results": results,
            "diagnostics": diagnostics,
            "status": status,
        });
        unsign_zeros(&mut v);
        v
    }

    pub fn emit(self) -> ExitCode {
        let failed = self.outcome.is_err();
        if let Err(e) = &self.outcome {
            eprintln!("catoptrix {}: {e}", self.command);
        }
        let text = match (&self.raw_stdout, failed) {
            (Some(raw), false) => raw.clone(),
            _ => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("values are finite");
                s.push('\n');
                s
            }
        };
        let mut out = std::io::stdout().lock();
        if out.write_all(text.as_bytes()).and_then(|_| out.flush()).is_err() {
            return ExitCode::from(2);
        }
        if failed {
            ExitCode::from(2)
        } else {
            ExitCode::SUCCESS
        }
    }
}

/// `-0.0` prints as `-0.0`; results should not depend on the sign of zero.
fn unsign_zeros(v: &mut Value) {
    match v {
        Value::Number(n) => {
            if n.as_f64() == Some(0.0) && n.is_f64() {
                *v = json!(0.0);
            }
        }
        Value::Array(a) => a.iter_mut().for_each(unsign_zeros),
        Value::Object(o) => o.values_mut().for_each(unsign_zeros),
        _ => {}
    }
}

/// A real; non-finite values become `null`.
pub fn num(x: f64) -> Value {
    if x.is_finite() {
        json!(x + 0.0)
    } else {
        Value::Null
    }
}

pub fn point(p: ComplexPoint) -> Value {
    json!([num(p.re()), num(p.im())])
}

pub fn points(ps: &[ComplexPoint]) -> Value {
    Value::Array(ps.iter().map(|p| point(*p)).collect())
}

pub fn nums(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|x| num(*x)).collect())
}

/// Shortest round-trip decimal, `.` separator, no exponent surprises for zero.
pub fn csv_real(x: f64) -> String {
    format!("{:?}", x + 0.0)
}
