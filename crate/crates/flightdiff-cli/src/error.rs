//! Process-level error type: every failure carries an exit code and renders
//! as a single JSON line on stderr.
//!
//! Exit codes: 1 for command-line usage problems, 2 for unreadable or
//! schema-violating inputs, 3 for inputs the domain logic rejects.

use crate::config::ConfigError;
use flightdiff::analysis::AnalysisError;
use flightdiff::corridor::CorridorError;
use flightdiff::difficulty::DifficultyError;
use flightdiff::geometry::GeometryError;
use flightdiff::io::IoError;
use flightdiff::scenegen::ScenegenError;
use flightdiff::trajmetrics::TrajectoryError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad command line or environment (exit 1).
    #[error("{0}")]
    Usage(String),
    /// Missing, unparseable, or schema-violating input files (exit 2).
    #[error("{0}")]
    Input(String),
    /// Well-formed inputs rejected by the domain logic (exit 3).
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Input(_) => 2,
            CliError::Domain(_) => 3,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Input(_) => "input",
            CliError::Domain(_) => "domain",
        }
    }

    /// Machine-readable one-line form for stderr.
    pub fn to_json(&self) -> String {
        format!(
            "{{\"error\":{{\"kind\":\"{}\",\"exit_code\":{},\"message\":\"{}\"}}}}",
            self.kind(),
            self.exit_code(),
            escape_json(&self.to_string())
        )
    }
}

fn escape_json(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                out.push_str(&format!("\\u{:04x}", c as u32));
            }
            c => out.push(c),
        }
    }
    out
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<ScenegenError> for CliError {
    fn from(e: ScenegenError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<GeometryError> for CliError {
    fn from(e: GeometryError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<CorridorError> for CliError {
    fn from(e: CorridorError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<DifficultyError> for CliError {
    fn from(e: DifficultyError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<TrajectoryError> for CliError {
    fn from(e: TrajectoryError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<AnalysisError> for CliError {
    fn from(e: AnalysisError) -> Self {
        CliError::Domain(e.to_string())
    }
}
