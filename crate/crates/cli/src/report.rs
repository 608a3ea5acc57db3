use std::fmt;
use std::path::Path;
use std::time::Instant;

use serde::Serialize;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

/// Process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(into = "u8")]
pub enum ExitCode {
    Ok = 0,
    Format = 2,
    Budget = 3,
    Semantic = 4,
    Verification = 5,
}

impl From<ExitCode> for u8 {
    fn from(c: ExitCode) -> u8 {
        c as u8
    }
}

#[derive(Debug, Clone)]
pub struct CliError {
    pub code: ExitCode,
    pub message: String,
}

impl CliError {
    pub fn format(e: impl fmt::Display) -> Self {
        CliError { code: ExitCode::Format, message: e.to_string() }
    }

    pub fn semantic(e: impl fmt::Display) -> Self {
        CliError { code: ExitCode::Semantic, message: e.to_string() }
    }

    pub fn verification(e: impl fmt::Display) -> Self {
        CliError { code: ExitCode::Verification, message: e.to_string() }
    }

    pub fn budget(e: impl fmt::Display) -> Self {
        CliError { code: ExitCode::Budget, message: e.to_string() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InputRecord {
    pub path: String,
    pub sha256: String,
    pub bytes: usize,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Outcome {
    Ok,
    BudgetExceeded { message: String },
    Error { code: u8, message: String },
}

#[derive(Debug, Clone, Serialize)]
pub struct Timing {
    pub wall_ms: f64,
}

/// Machine-readable record of one invocation.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub command: String,
    pub inputs: Vec<InputRecord>,
    pub parameters: Map<String, Value>,
    pub outcome: Outcome,
    pub timing: Timing,
    pub counters: Map<String, Value>,
    #[serde(skip_serializing_if = "Map::is_empty")]
    pub artifacts: Map<String, Value>,
    #[serde(skip)]
    started: Option<Instant>,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        RunReport {
            schema: 1,
            command: command.to_string(),
            inputs: Vec::new(),
            parameters: Map::new(),
            outcome: Outcome::Ok,
            timing: Timing { wall_ms: 0.0 },
            counters: Map::new(),
            artifacts: Map::new(),
            started: Some(Instant::now()),
        }
    }

    /// Reads an input file, recording its path and hash.
    pub fn read_input(&mut self, path: &Path) -> Result<Vec<u8>, CliError> {
        let bytes = std::fs::read(path).map_err(|e| CliError::format(format!("{}: {e}", path.display())))?;
        self.inputs.push(InputRecord {
            path: path.display().to_string(),
            sha256: hex::encode(Sha256::digest(&bytes)),
            bytes: bytes.len(),
        });
        Ok(bytes)
    }

    pub fn read_text(&mut self, path: &Path) -> Result<String, CliError> {
        let bytes = self.read_input(path)?;
        String::from_utf8(bytes).map_err(|_| CliError::format(format!("{}: not UTF-8", path.display())))
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) {
        self.parameters.insert(key.to_string(), value.into());
    }

    pub fn count(&mut self, key: &str, value: impl Into<Value>) {
        self.counters.insert(key.to_string(), value.into());
    }

    pub fn artifact(&mut self, key: &str, value: impl Into<Value>) {
        self.artifacts.insert(key.to_string(), value.into());
    }

    pub fn finish(&mut self, result: &Result<(), CliError>) -> ExitCode {
        if let Some(t) = self.started.take() {
            self.timing.wall_ms = t.elapsed().as_secs_f64() * 1e3;
        }
        match result {
            Ok(()) => {
                self.outcome = Outcome::Ok;
                ExitCode::Ok
            }
            Err(e) if e.code == ExitCode::Budget => {
                self.outcome = Outcome::BudgetExceeded { message: e.message.clone() };
                e.code
            }
            Err(e) => {
                self.outcome = Outcome::Error { code: e.code.into(), message: e.message.clone() };
                e.code
            }
        }
    }
}
