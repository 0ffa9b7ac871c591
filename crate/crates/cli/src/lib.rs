//! Batch front end for the folding calculus: loading and validating JSON
//! objects, applying moves, running checks, exporting DOT and replaying
//! named scenarios.
//!
//! Every command returns an [`Outcome`]: the text to print and whether the
//! command's assertion held.  The binary maps outcomes and errors to exit
//! codes: 0 pass, 1 assertion failure, 2 usage or schema error.

pub mod commands;
pub mod scenarios;

use std::io::Read;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;
use thiserror::Error;

/// Environment variable seeding every randomized harness.
pub const SEED_VAR: &str = "ORBIFOLD_FOLDS_SEED";

/// Seed used when [`SEED_VAR`] is unset.
pub const DEFAULT_SEED: u64 = 20_240_601;

/// Errors of the command layer.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("schema error at {}: {message}", if pointer.is_empty() { "document root" } else { pointer.as_str() })]
    Schema { pointer: String, message: String },
    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    /// Process exit code for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Failed(_) => 1,
            _ => 2,
        }
    }
}

/// Text produced by a command and whether its assertion held.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub passed: bool,
}

impl Outcome {
    pub fn pass(text: String) -> Self {
        Outcome { text, passed: true }
    }

    pub fn verdict(text: String, passed: bool) -> Self {
        Outcome { text, passed }
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }
}

/// The harness seed: [`SEED_VAR`] if set and numeric, else [`DEFAULT_SEED`].
pub fn seed_from_env() -> Result<u64, CliError> {
    match std::env::var(SEED_VAR) {
        Ok(s) => s.trim().parse().map_err(|_| CliError::Usage(format!("{SEED_VAR} must be an unsigned integer, got {s:?}"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

/// Reads a file, or stdin when `path` is `None` or `-`.
pub fn read_input(path: Option<&Path>) -> Result<String, CliError> {
    match path {
        Some(p) if p != Path::new("-") => std::fs::read_to_string(p).map_err(|e| io_error(p, e)),
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::Io { path: "<stdin>".into(), message: e.to_string() })?;
            Ok(s)
        }
    }
}

/// Writes to a file, or stdout when `path` is `None` or `-`.
pub fn write_output(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) if p != Path::new("-") => std::fs::write(p, text).map_err(|e| io_error(p, e)),
        _ => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|e| CliError::Io { path: "<stdout>".into(), message: e.to_string() })
        }
    }
}

fn io_error(p: &Path, e: std::io::Error) -> CliError {
    CliError::Io { path: p.display().to_string(), message: e.to_string() }
}

/// Parses JSON, reporting failures with the JSON pointer of the offending
/// value (`""` for the document root).  Validation performed while
/// converting a whole object is reported at that object.
pub fn parse_json<T: DeserializeOwned>(text: &str) -> Result<T, CliError> {
    let mut de = serde_json::Deserializer::from_str(text);
    let value = serde_path_to_error::deserialize(&mut de).map_err(|e| CliError::Schema {
        pointer: json_pointer(e.path()),
        message: e.inner().to_string(),
    })?;
    de.end().map_err(|e| CliError::Schema { pointer: String::new(), message: e.to_string() })?;
    Ok(value)
}

/// Renders a deserialization path as an RFC 6901 JSON pointer.
fn json_pointer(path: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment;
    let mut out = String::new();
    for seg in path.iter() {
        let token = match seg {
            Segment::Seq { index } => index.to_string(),
            Segment::Map { key } => key.replace('~', "~0").replace('/', "~1"),
            Segment::Enum { variant } => variant.clone(),
            Segment::Unknown => continue,
        };
        out.push('/');
        out.push_str(&token);
    }
    out
}

/// Pretty JSON with a trailing newline (field order follows the types, so
/// output is deterministic).
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("command outputs serialize");
    s.push('\n');
    s
}
