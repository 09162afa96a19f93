use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;

use crate::error::CliError;

/// Record of one file-writing invocation.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub inputs: Value,
    pub seed: Option<u64>,
    pub outputs: Vec<String>,
    pub tool_version: String,
}

impl RunManifest {
    pub fn new(command: &str, inputs: Value, seed: Option<u64>) -> Self {
        RunManifest {
            command: command.to_string(),
            inputs,
            seed,
            outputs: Vec::new(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn record(&mut self, path: &Path) {
        self.outputs.push(path.display().to_string());
    }

    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        let text = serde_json::to_string_pretty(self).expect("manifest serializes");
        write_file(path, &(text + "\n"))
    }
}

/// `runs/sweep.csv` -> `runs/sweep.manifest.json`.
pub fn manifest_path_for(output: &Path) -> PathBuf {
    output.with_extension("manifest.json")
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Write {
        path: path.to_path_buf(),
        source,
    })
}
