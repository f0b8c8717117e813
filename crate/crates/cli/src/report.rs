use std::fs;
use std::io::Read;
use std::path::Path;

use mta_core::Error;
use serde::Serialize;
use serde_json::Value;

use crate::args::Format;

pub const MAX_RANK: usize = 4;
pub const MAX_DEGREE: u32 = 8;
pub const MAX_LATTICE_RANK: usize = 4;

/// A finished computation: a JSON value, its text rendering and whether
/// every verification in it passed.
pub struct Report {
    pub json: Value,
    pub text: String,
    pub passed: bool,
    pub default_format: Format,
}

impl Report {
    pub fn new(json: impl Serialize, text: String, passed: bool) -> Self {
        Self {
            json: serde_json::to_value(json).expect("serializable report"),
            text,
            passed,
            default_format: Format::Json,
        }
    }

    pub fn text_default(mut self) -> Self {
        self.default_format = Format::Text;
        self
    }

    pub fn render(&self, format: Option<Format>) -> String {
        match format.unwrap_or(self.default_format) {
            Format::Json => serde_json::to_string(&self.json).expect("json"),
            Format::Text => self.text.trim_end().to_string(),
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failed(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_)
            | Error::MalformedAlgebra(_)
            | Error::MalformedModule(_)
            | Error::InvalidLattice(_)
            | Error::InvalidPartition(_)
            | Error::ZeroRank
            | Error::GeneratorOutOfRange { .. }
            | Error::RankMismatch { .. }
            | Error::DegreeOutOfRange { .. } => CliError::Usage(e.to_string()),
            _ => CliError::Failed(e.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Clone, Copy)]
pub struct Limits {
    pub enforced: bool,
}

impl Limits {
    pub fn rank(&self, rank: usize) -> CliResult<()> {
        if rank == 0 {
            return Err(CliError::Usage("--rank must be positive".into()));
        }
        if self.enforced && rank > MAX_RANK {
            return Err(CliError::Usage(format!(
                "--rank {rank} exceeds the limit {MAX_RANK} (pass --unsafe-no-limits to override)"
            )));
        }
        Ok(())
    }

    pub fn degree(&self, flag: &str, degree: u32) -> CliResult<()> {
        if self.enforced && degree > MAX_DEGREE {
            return Err(CliError::Usage(format!(
                "{flag} {degree} exceeds the limit {MAX_DEGREE} (pass --unsafe-no-limits to override)"
            )));
        }
        Ok(())
    }

    pub fn lattice_rank(&self, rank: usize) -> CliResult<()> {
        if self.enforced && rank > MAX_LATTICE_RANK {
            return Err(CliError::Usage(format!(
                "--gram has rank {rank}, above the limit {MAX_LATTICE_RANK} (pass --unsafe-no-limits to override)"
            )));
        }
        Ok(())
    }
}

pub fn read_input(flag: &str, path: &Path) -> CliResult<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Usage(format!("{flag}: cannot read stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{flag} {}: {e}", path.display())))
}

pub fn read_json<T: serde::de::DeserializeOwned>(flag: &str, path: &Path) -> CliResult<T> {
    let text = read_input(flag, path)?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{flag} {}: {e}", path.display())))
}

pub fn mark(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}
