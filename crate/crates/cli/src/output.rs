use std::fmt;

use clap::ValueEnum;
use dbraid_core::braid::BraidError;
use dbraid_core::centre::CentreError;
use dbraid_core::scheme::SchemeError;
use dbraid_core::toric::ToricError;
use serde_json::Value;

pub const OK: u8 = 0;
pub const MISMATCH: u8 = 4;

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

/// What a command prints, in both formats, and its exit code.
pub struct Report {
    pub json: Value,
    pub text: String,
    pub code: u8,
}

impl Report {
    pub fn new(json: Value, text: String) -> Self {
        Report { json, text, code: OK }
    }

    pub fn with_code(mut self, code: u8) -> Self {
        self.code = code;
        self
    }

    pub fn print(&self, format: Format) {
        match format {
            Format::Json => println!("{}", serde_json::to_string_pretty(&self.json).expect("serializable")),
            Format::Text => print!("{}", self.text),
        }
    }
}

#[derive(Debug)]
pub enum Failure {
    /// Exit 2.
    Input(String),
    /// Exit 3.
    Structural(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Structural(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(m) | Failure::Structural(m) => f.write_str(m),
        }
    }
}

impl From<SchemeError> for Failure {
    fn from(e: SchemeError) -> Self {
        Failure::Input(format!("invalid scheme: {e}"))
    }
}

impl From<ToricError> for Failure {
    fn from(e: ToricError) -> Self {
        match e {
            ToricError::MalformedInput(_)
            | ToricError::VertexNotFound(_)
            | ToricError::NonPositiveDegree { .. }
            | ToricError::DegreeCountMismatch { .. } => Failure::Input(e.to_string()),
            _ => Failure::Structural(e.to_string()),
        }
    }
}

impl From<BraidError> for Failure {
    fn from(e: BraidError) -> Self {
        match e {
            BraidError::Syntax { .. } | BraidError::IndexOutOfRange { .. } => Failure::Input(e.to_string()),
            _ => Failure::Structural(e.to_string()),
        }
    }
}

impl From<CentreError> for Failure {
    fn from(e: CentreError) -> Self {
        Failure::Structural(e.to_string())
    }
}

/// Left-aligned columns separated by two spaces.
pub fn align(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in rows {
        let line: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(c, s)| format!("{s:<w$}", w = widths[c]))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}
