use std::io::Write;

use indexmap::IndexMap;
use lglab::tolerance::Tolerances;
use serde::Serialize;
use serde_json::Value;

use crate::source::SourceEcho;
use crate::{CliError, Common};

/// Bumped whenever the report layout changes.
pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, Serialize)]
pub struct Tool {
    pub name: &'static str,
    pub version: &'static str,
}

#[derive(Debug, Serialize)]
pub struct ToleranceEcho {
    #[serde(flatten)]
    pub engine: Tolerances,
    /// The `--tol` value.
    pub identity_exit_threshold: f64,
}

#[derive(Debug, Serialize)]
pub struct Inputs {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub source: Option<SourceEcho>,
    pub options: IndexMap<String, Value>,
}

#[derive(Debug, Serialize)]
pub struct Report<T> {
    pub report_version: u32,
    pub tool: Tool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generated_at: Option<String>,
    pub command: &'static str,
    pub inputs: Inputs,
    pub tolerances: ToleranceEcho,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    pub result: T,
}

impl<T: Serialize> Report<T> {
    pub fn new(c: &Common, command: &'static str, source: Option<SourceEcho>, options: IndexMap<String, Value>, result: T) -> Self {
        Self {
            report_version: REPORT_VERSION,
            tool: Tool {
                name: "lglab",
                version: env!("CARGO_PKG_VERSION"),
            },
            generated_at: (!c.no_timestamp).then(|| chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true)),
            command,
            inputs: Inputs { source, options },
            tolerances: ToleranceEcho {
                engine: Tolerances::default(),
                identity_exit_threshold: c.tol,
            },
            warnings: Vec::new(),
            result,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

/// Writes to `--out` or stdout.
pub fn emit(c: &Common, text: &str) -> Result<(), CliError> {
    match &c.out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::Input(format!("stdout: {e}")))
        }
    }
}
