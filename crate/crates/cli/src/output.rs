use fivevertex::Error;
use serde::Serialize;
use serde_json::{json, Value};
use std::fs::File;
use std::io::{self, Write};
use std::path::Path;
use std::process::ExitCode;

pub enum Outcome {
    Pass,
    CheckFailed,
}

impl Outcome {
    pub fn from_pass(pass: bool) -> Self {
        if pass {
            Outcome::Pass
        } else {
            Outcome::CheckFailed
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Model(Error),
    Io(io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Model(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(io::Error::other(e))
    }
}

impl CliError {
    fn code(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Io(_) => "io",
            CliError::Model(e) => match e {
                Error::InvalidSpec(_) => "invalid_spec",
                Error::Structural(_) => "structural",
                Error::Domain(_) => "domain",
                Error::Resource(_) => "resource",
                Error::Degenerate(_) => "degenerate",
            },
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Usage(m) => m.clone(),
            CliError::Model(e) => e.to_string(),
            CliError::Io(e) => e.to_string(),
        }
    }

    /// Bad input exits with 2, failures while computing with 1.
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Model(Error::InvalidSpec(_) | Error::Domain(_)) => 2,
            _ => 1,
        }
    }

    pub fn report(&self) -> ExitCode {
        eprintln!("{}", json!({ "error": self.code(), "message": self.message() }));
        ExitCode::from(self.exit_code())
    }
}

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Stdout, or the file at `path`.
pub fn sink(path: Option<&Path>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(File::create(p)?),
        None => Box::new(io::stdout().lock()),
    })
}

pub fn write_json(path: Option<&Path>, value: &impl Serialize, digits: Option<u32>) -> Result<(), CliError> {
    let mut v = serde_json::to_value(value).map_err(|e| CliError::Io(io::Error::other(e)))?;
    if let Some(d) = digits {
        round_json(&mut v, d);
    }
    let mut out = sink(path)?;
    writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("values serialise"))?;
    Ok(())
}

pub fn write_csv<T: Serialize>(path: Option<&Path>, rows: &[T]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(sink(path)?);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

/// `v` rounded to `digits` significant digits; `f64` carries at most 17.
pub fn round_sig(v: f64, digits: u32) -> f64 {
    if digits >= 17 || v == 0.0 || !v.is_finite() {
        return v;
    }
    format!("{:.*e}", digits.saturating_sub(1) as usize, v).parse().unwrap_or(v)
}

fn round_json(v: &mut Value, digits: u32) {
    match v {
        Value::Number(n) if n.is_f64() => {
            if let Some(r) = n.as_f64().and_then(|f| serde_json::Number::from_f64(round_sig(f, digits))) {
                *n = r;
            }
        }
        Value::Array(a) => a.iter_mut().for_each(|x| round_json(x, digits)),
        Value::Object(o) => o.values_mut().for_each(|x| round_json(x, digits)),
        _ => {}
    }
}
