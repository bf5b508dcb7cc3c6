use std::io::Write;

use lefschetz::{Error, Result};
use serde::{Deserialize, Serialize};

use crate::{Format, OutputArgs};

pub const SCHEMA: u32 = 1;

/// Versioned wrapper around every JSON document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub schema: u32,
    pub command: String,
    pub data: T,
}

pub fn json<T: Serialize>(command: &str, data: &T) -> Result<String> {
    let env = Envelope {
        schema: SCHEMA,
        command: command.to_string(),
        data,
    };
    let mut s = serde_json::to_string_pretty(&env).map_err(io_err)?;
    s.push('\n');
    Ok(s)
}

pub fn csv<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    for row in rows {
        w.serialize(row).map_err(io_err)?;
    }
    let bytes = w.into_inner().map_err(io_err)?;
    String::from_utf8(bytes).map_err(io_err)
}

pub fn unsupported(format: Format, command: &str) -> Error {
    Error::InvalidArgument(format!("{command} has no {format:?} output").to_lowercase())
}

fn io_err(e: impl std::fmt::Display) -> Error {
    Error::InvalidArgument(format!("output: {e}"))
}

/// Write to `--out` when given, otherwise to `stdout`.
pub fn emit(args: &OutputArgs, stdout: &mut dyn Write, body: &str) -> Result<()> {
    match &args.out {
        Some(path) => std::fs::write(path, body).map_err(|e| io_err(format!("{}: {e}", path.display()))),
        None => stdout.write_all(body.as_bytes()).map_err(io_err),
    }
}
