//! Run manifests written next to every result file.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub subcommand: String,
    pub version: String,
    pub config: serde_json::Value,
    pub inputs: Vec<InputDigest>,
    pub outputs: Vec<String>,
    pub workers: usize,
    pub wall_clock_secs: f64,
}

impl RunManifest {
    pub fn new(subcommand: &str, config: serde_json::Value, workers: usize) -> Self {
        RunManifest {
            subcommand: subcommand.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            config,
            inputs: Vec::new(),
            outputs: Vec::new(),
            workers,
            wall_clock_secs: 0.0,
        }
    }

    pub fn add_input(&mut self, path: &Path) -> std::io::Result<()> {
        let bytes = fs::read(path)?;
        self.inputs.push(InputDigest {
            path: path.display().to_string(),
            sha256: sha256_hex(&bytes),
        });
        Ok(())
    }

    /// Write `contents` to `path` and record it.
    pub fn write_output(&mut self, path: &Path, contents: &str) -> std::io::Result<()> {
        if let Some(dir) = path.parent() {
            if !dir.as_os_str().is_empty() {
                fs::create_dir_all(dir)?;
            }
        }
        fs::write(path, contents)?;
        self.outputs.push(path.display().to_string());
        Ok(())
    }

    /// `<first output>.manifest.json`, the name each output uses to find its manifest.
    pub fn path_for(output: &Path) -> PathBuf {
        let mut name = output.as_os_str().to_owned();
        name.push(".manifest.json");
        PathBuf::from(name)
    }

    /// Write one manifest copy per output.
    pub fn finish(&self) -> std::io::Result<Vec<PathBuf>> {
        let text = serde_json::to_string_pretty(self).expect("manifest serialises");
        let mut written = Vec::new();
        for out in &self.outputs {
            let p = Self::path_for(Path::new(out));
            fs::write(&p, &text)?;
            written.push(p);
        }
        Ok(written)
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    digest.iter().map(|b| format!("{b:02x}")).collect()
}
