//! JSON argument loading and report output.

use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

/// Exit codes.
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
    pub location: Option<(usize, usize)>,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError { code: EXIT_USAGE, message: message.into(), location: None }
    }
}

impl From<tetrafarey::Error> for CliError {
    fn from(e: tetrafarey::Error) -> Self {
        let code = if matches!(e, tetrafarey::Error::BRelation(_)) { EXIT_FAIL } else { EXIT_USAGE };
        CliError { code, message: e.to_string(), location: None }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Reads an argument that is `-` (standard input), an existing file, or inline JSON.
fn read_source(arg: &str) -> CliResult<(String, String)> {
    if arg == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| CliError::usage(format!("reading stdin: {e}")))?;
        return Ok((s, "<stdin>".into()));
    }
    let p = Path::new(arg);
    if p.is_file() {
        let s = fs::read_to_string(p).map_err(|e| CliError::usage(format!("reading {arg}: {e}")))?;
        return Ok((s, arg.to_string()));
    }
    Ok((arg.to_string(), "<inline>".into()))
}

/// Parses a JSON argument; errors carry the line and column within the source.
pub fn load<T: DeserializeOwned>(name: &str, arg: &str) -> CliResult<T> {
    let (text, origin) = read_source(arg)?;
    serde_json::from_str(&text).map_err(|e| CliError {
        code: EXIT_USAGE,
        message: format!("--{name} ({origin}): {e}"),
        location: Some((e.line(), e.column())),
    })
}

/// A command's machine-readable outcome.
pub struct Report {
    pub command: String,
    pub pass: bool,
    pub residual: Option<Value>,
    pub witnesses: Vec<Value>,
    pub result: Value,
}

impl Report {
    pub fn new(command: &str, pass: bool, result: impl Serialize) -> Self {
        Report { command: command.into(), pass, residual: None, witnesses: Vec::new(), result: to_value(result) }
    }

    pub fn residual(mut self, r: Value) -> Self {
        self.residual = Some(r);
        self
    }

    pub fn witness(mut self, w: impl Serialize) -> Self {
        self.witnesses.push(to_value(w));
        self
    }
}

pub fn to_value(x: impl Serialize) -> Value {
    serde_json::to_value(x).expect("serialisable")
}

pub fn render(v: &Value, indent: Option<usize>) -> String {
    match indent {
        Some(0) => serde_json::to_string(v).expect("serialisable"),
        n => {
            let pad = vec![b' '; n.unwrap_or(2)];
            let mut buf = Vec::new();
            let fmt = serde_json::ser::PrettyFormatter::with_indent(&pad);
            let mut ser = serde_json::Serializer::with_formatter(&mut buf, fmt);
            v.serialize(&mut ser).expect("serialisable");
            String::from_utf8(buf).expect("utf-8")
        }
    }
}

pub fn report_value(r: &Report, timing_ms: Option<f64>) -> Value {
    let mut v = json!({
        "schema": 1,
        "command": r.command,
        "pass": r.pass,
        "witnesses": r.witnesses,
        "result": r.result,
    });
    if let Some(res) = &r.residual {
        v["residual"] = res.clone();
    }
    if let Some(t) = timing_ms {
        v["timing_ms"] = json!(t);
    }
    v
}

pub fn error_value(command: &str, e: &CliError) -> Value {
    let mut err = json!({ "message": e.message });
    if let Some((line, column)) = e.location {
        err["line"] = json!(line);
        err["column"] = json!(column);
    }
    json!({ "schema": 1, "command": command, "pass": false, "error": err })
}

/// Writes the whole document in one call.
pub fn emit(v: &Value, indent: Option<usize>) {
    let mut s = render(v, indent);
    s.push('\n');
    let mut out = io::stdout().lock();
    let _ = out.write_all(s.as_bytes());
    let _ = out.flush();
}
