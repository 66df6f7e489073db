use serde::{Deserialize, Serialize};

/// Bumped whenever a field of the JSON output changes meaning.
pub const SCHEMA_VERSION: u32 = 1;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timings {
    pub wall_ms: u64,
}

/// What every command prints with `--json`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportEnvelope<P> {
    pub schema_version: u32,
    pub tool_version: String,
    pub command: String,
    /// SHA-256 of the canonical problem; empty for commands without one.
    pub input_hash: String,
    pub payload: P,
    pub timings: Timings,
}

impl<P> ReportEnvelope<P> {
    pub fn new(command: impl Into<String>, input_hash: impl Into<String>, payload: P, wall_ms: u64) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            tool_version: TOOL_VERSION.to_string(),
            command: command.into(),
            input_hash: input_hash.into(),
            payload,
            timings: Timings { wall_ms },
        }
    }
}
