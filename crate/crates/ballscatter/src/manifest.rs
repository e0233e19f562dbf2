//! Run manifests: a small JSON record written alongside every CLI output.

use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    /// Recorded whenever the command consumed randomness.
    pub seed: Option<u64>,
    pub tool_version: String,
    pub duration_seconds: f64,
}

impl RunManifest {
    pub fn start(command: &str) -> ManifestBuilder {
        ManifestBuilder {
            command: command.to_string(),
            inputs: Vec::new(),
            outputs: Vec::new(),
            seed: None,
            started: Instant::now(),
        }
    }
}

pub struct ManifestBuilder {
    command: String,
    inputs: Vec<String>,
    outputs: Vec<String>,
    seed: Option<u64>,
    started: Instant,
}

impl ManifestBuilder {
    pub fn input(mut self, path: impl AsRef<Path>) -> Self {
        self.inputs.push(path.as_ref().display().to_string());
        self
    }

    pub fn output(mut self, path: impl AsRef<Path>) -> Self {
        self.outputs.push(path.as_ref().display().to_string());
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn finish(self) -> RunManifest {
        RunManifest {
            command: self.command,
            inputs: self.inputs,
            outputs: self.outputs,
            seed: self.seed,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            duration_seconds: self.started.elapsed().as_secs_f64(),
        }
    }
}

/// Writes the manifest next to an output file as `<output>.manifest.json`.
pub fn write_alongside(manifest: &RunManifest, output: &Path) -> std::io::Result<PathBuf> {
    let mut name = output.file_name().unwrap_or_default().to_os_string();
    name.push(".manifest.json");
    let path = output.with_file_name(name);
    let json = serde_json::to_string_pretty(manifest).expect("manifest serializes");
    std::fs::write(&path, json + "\n")?;
    Ok(path)
}
