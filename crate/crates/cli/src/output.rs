use std::io::Write;
use std::path::Path;
use std::time::Instant;

use anyhow::Context;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Success,
    /// The mathematics says no; the report carries the witness.
    Failure,
    /// The input does not meet the hypotheses (e.g. minimum degree).
    Refused,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Success => 0,
            Status::Failure | Status::Refused => 1,
        }
    }
}

#[derive(Serialize)]
pub struct Timing {
    pub elapsed_ms: f64,
}

/// Every JSON report has this shape; only `timing` varies between
/// identical runs.
#[derive(Serialize)]
pub struct Envelope<'a, T: Serialize> {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub status: Status,
    pub result: &'a T,
    pub timing: Timing,
}

pub fn emit<T: Serialize>(
    command: &'static str,
    status: Status,
    result: &T,
    started: Instant,
    path: Option<&Path>,
) -> anyhow::Result<Status> {
    let envelope = Envelope {
        schema_version: tridecomp::SCHEMA_VERSION,
        command,
        status,
        result,
        timing: Timing { elapsed_ms: started.elapsed().as_secs_f64() * 1e3 },
    };
    let mut text = serde_json::to_string_pretty(&envelope)?;
    text.push('\n');
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(status)
}

pub fn progress(quiet: bool, msg: impl AsRef<str>) {
    if !quiet {
        eprintln!("{}", msg.as_ref());
    }
}
