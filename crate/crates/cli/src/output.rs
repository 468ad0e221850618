use std::io::Write;

use serde::Serialize;
use serde_json::{json, Value};

/// A tabular view of a payload, used by `--csv`.
#[derive(Debug, Default)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Table { headers: headers.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

#[derive(Debug)]
pub struct Outcome {
    pub payload: Value,
    pub table: Table,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(homstab::Error),
    Internal(String),
}

impl From<homstab::Error> for CliError {
    fn from(e: homstab::Error) -> Self {
        if e.is_internal() {
            CliError::Internal(e.to_string())
        } else {
            CliError::Domain(e)
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 3,
            CliError::Internal(_) => 4,
        }
    }

    fn to_json(&self) -> Value {
        match self {
            CliError::Usage(m) => json!({ "kind": "usage", "message": m }),
            CliError::Domain(e) => json!({ "kind": e.kind(), "message": e.to_string() }),
            CliError::Internal(m) => json!({ "kind": "internal", "message": m }),
        }
    }
}

#[derive(Serialize)]
struct Envelope<'a> {
    command: Option<&'a str>,
    parameters: Value,
    payload: Value,
    error: Value,
    exit_code: u8,
}

/// Writes the result to stdout and returns the exit code.
pub fn emit(command: Option<&str>, parameters: Value, outcome: Result<Outcome, CliError>, csv: bool) -> u8 {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match outcome {
        Ok(o) if csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let ok = w.write_record(&o.table.headers).is_ok() && o.table.rows.iter().all(|r| w.write_record(r).is_ok());
            match (ok, w.into_inner()) {
                (true, Ok(bytes)) => {
                    let _ = out.write_all(&bytes);
                    0
                }
                _ => emit_json(&mut out, command, parameters, Value::Null, Some(CliError::Internal("csv encoding failed".into()))),
            }
        }
        Ok(o) => emit_json(&mut out, command, parameters, o.payload, None),
        Err(e) => emit_json(&mut out, command, parameters, Value::Null, Some(e)),
    }
}

fn emit_json(out: &mut impl Write, command: Option<&str>, parameters: Value, payload: Value, error: Option<CliError>) -> u8 {
    let exit_code = error.as_ref().map_or(0, CliError::exit_code);
    let env = Envelope { command, parameters, payload, error: error.as_ref().map_or(Value::Null, CliError::to_json), exit_code };
    let text = serde_json::to_string_pretty(&env).expect("json values serialize");
    let _ = writeln!(out, "{}", text);
    exit_code
}
