//! Atomic artifact writing.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use tempfile::NamedTempFile;

pub const MANIFEST: &str = "manifest.json";

/// Writes `bytes` to `dir/name` through a temporary file in the same
/// directory followed by a rename.
pub fn write_atomic(dir: &Path, name: &str, bytes: &[u8]) -> std::io::Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let target = dir.join(name);
    let mut tmp = NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(&target).map_err(|e| e.error)?;
    Ok(target)
}

pub fn json_bytes(v: &Value) -> Vec<u8> {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s.into_bytes()
}

/// Collects artifacts for one command and finishes with a sidecar manifest
/// carrying the tool version.
pub struct ArtifactSet {
    dir: PathBuf,
    command: String,
    files: Vec<String>,
}

impl ArtifactSet {
    pub fn new(dir: &Path, command: &str) -> Self {
        Self {
            dir: dir.to_path_buf(),
            command: command.to_string(),
            files: Vec::new(),
        }
    }

    pub fn write(&mut self, name: &str, bytes: &[u8]) -> std::io::Result<()> {
        write_atomic(&self.dir, name, bytes)?;
        self.files.push(name.to_string());
        Ok(())
    }

    pub fn finish(self) -> std::io::Result<()> {
        let manifest = json!({
            "tool": env!("CARGO_PKG_NAME"),
            "version": env!("CARGO_PKG_VERSION"),
            "schema": super::render::SCHEMA,
            "command": self.command,
            "files": self.files,
        });
        write_atomic(&self.dir, MANIFEST, &json_bytes(&manifest))?;
        Ok(())
    }
}
