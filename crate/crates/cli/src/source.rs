use std::path::{Path, PathBuf};

use clap::Args;
use indexmap::IndexMap;
use lglab::schema::{from_json, to_json};
use lglab::zoo::{build, catalog, ZooParams};
use lglab::Bundle;
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::CliError;

/// Directory for cached sphere-grid models, which take a moment to build.
pub const CACHE_ENV: &str = "LGLAB_ZOO_CACHE";

#[derive(Args, Debug, Clone, Default)]
pub struct ZooArgs {
    #[arg(long)]
    pub theta1: Option<f64>,
    #[arg(long)]
    pub theta2: Option<f64>,
    /// Sets both flip probabilities.
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub p1: Option<f64>,
    #[arg(long)]
    pub p2: Option<f64>,
    /// Sphere grid size.
    #[arg(long)]
    pub grid: Option<usize>,
    #[arg(long)]
    pub mod1_sq: Option<f64>,
    #[arg(long)]
    pub phi: Option<f64>,
}

impl ZooArgs {
    pub fn params(&self) -> ZooParams {
        let d = ZooParams::default();
        ZooParams {
            theta1: self.theta1.unwrap_or(d.theta1),
            theta2: self.theta2.unwrap_or(d.theta2),
            p1: self.p1.or(self.p).unwrap_or(d.p1),
            p2: self.p2.or(self.p).unwrap_or(d.p2),
            grid: self.grid.unwrap_or(d.grid),
            mod1_sq: self.mod1_sq.unwrap_or(d.mod1_sq),
            phi: self.phi.unwrap_or(d.phi),
        }
    }
}

/// A model file, or `--zoo NAME` with its parameters.
#[derive(Args, Debug, Clone)]
pub struct SourceArgs {
    /// Model file (JSON, schema 1).
    #[arg(required_unless_present = "zoo")]
    pub model: Option<PathBuf>,
    /// Use a built-in model instead of a file.
    #[arg(long, conflicts_with = "model")]
    pub zoo: Option<String>,
    #[command(flatten)]
    pub params: ZooArgs,
}

/// How the model was obtained, as echoed in reports.
#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum SourceEcho {
    File { file: String, sha256: String },
    Zoo { zoo: String, params: IndexMap<String, Value> },
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// The parameters `name` actually reads, by name.
pub fn zoo_params_echo(name: &str, p: &ZooParams) -> IndexMap<String, Value> {
    let entry = catalog().into_iter().find(|e| e.name == name);
    let used = entry.map(|e| e.params).unwrap_or(&[]);
    used.iter()
        .map(|&k| {
            let v = match k {
                "theta1" => Value::from(p.theta1),
                "theta2" => Value::from(p.theta2),
                "p1" => Value::from(p.p1),
                "p2" => Value::from(p.p2),
                "grid" => Value::from(p.grid),
                "mod1_sq" => Value::from(p.mod1_sq),
                "phi" => Value::from(p.phi),
                _ => Value::Null,
            };
            (k.to_string(), v)
        })
        .collect()
}

pub fn load_file(path: &Path) -> Result<(Bundle, SourceEcho), CliError> {
    let bytes = std::fs::read(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let text = String::from_utf8(bytes.clone()).map_err(|_| CliError::Input(format!("{}: not UTF-8", path.display())))?;
    let bundle = from_json(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let echo = SourceEcho::File {
        file: path.display().to_string(),
        sha256: sha256_hex(&bytes),
    };
    Ok((bundle, echo))
}

fn cache_path(dir: &Path, name: &str, echo: &IndexMap<String, Value>) -> PathBuf {
    let key = serde_json::to_string(echo).expect("parameter echo serializes");
    dir.join(format!("{name}-{}.json", &sha256_hex(key.as_bytes())[..16]))
}

pub fn load_zoo(name: &str, p: &ZooParams) -> Result<(Bundle, SourceEcho), CliError> {
    let params = zoo_params_echo(name, p);
    let cache = std::env::var_os(CACHE_ENV)
        .filter(|_| name == "ks-sphere")
        .map(|d| cache_path(Path::new(&d), name, &params));
    if let Some(path) = &cache {
        if let Ok(text) = std::fs::read_to_string(path) {
            match from_json(&text) {
                Ok(b) => return Ok((b, SourceEcho::Zoo { zoo: name.into(), params })),
                Err(e) => eprintln!("warning: ignoring cached model {}: {e}", path.display()),
            }
        }
    }
    let bundle = build(name, p)?;
    if let Some(path) = &cache {
        let written = path
            .parent()
            .map_or(Ok(()), std::fs::create_dir_all)
            .and_then(|_| std::fs::write(path, to_json(&bundle)));
        if let Err(e) = written {
            eprintln!("warning: could not cache {}: {e}", path.display());
        }
    }
    Ok((bundle, SourceEcho::Zoo { zoo: name.into(), params }))
}

impl SourceArgs {
    pub fn load(&self) -> Result<(Bundle, SourceEcho), CliError> {
        match (&self.model, &self.zoo) {
            (Some(path), _) => load_file(path),
            (None, Some(name)) => load_zoo(name, &self.params.params()),
            (None, None) => Err(CliError::Input("give a model file or --zoo NAME".into())),
        }
    }
}
