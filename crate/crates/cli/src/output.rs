// SPDX-License-Identifier: Apache-2.0

//! The JSON envelope every command writes with `--out`.

use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

/// Command name, flags, and the SHA-256 of every input file. Output paths are
/// left out so the hash only depends on what determines the result.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub seed: u64,
    pub inputs: Vec<InputFile>,
    pub params: Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct InputFile {
    pub path: String,
    pub sha256: String,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl RunConfig {
    pub fn new(command: &str, seed: u64, params: Value) -> Self {
        RunConfig {
            command: command.to_string(),
            seed,
            inputs: Vec::new(),
            params,
        }
    }

    pub fn input(&mut self, path: &Path, text: &str) {
        self.inputs.push(InputFile {
            path: path.display().to_string(),
            sha256: sha256_hex(text.as_bytes()),
        });
    }

    pub fn hash(&self) -> String {
        let canonical = serde_json::to_string(self).expect("config serializes");
        sha256_hex(canonical.as_bytes())
    }
}

pub fn envelope(config: &RunConfig, passed: bool, body: Value) -> Value {
    json!({
        "command": config.command,
        "seed": config.seed,
        "config_hash": config.hash(),
        "config": config,
        "passed": passed,
        "result": body,
    })
}

pub fn write_json(path: &Path, doc: &Value) -> Result<()> {
    let mut text = serde_json::to_string_pretty(doc)?;
    text.push('\n');
    std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hash_ignores_nothing_but_is_stable() {
        let mut a = RunConfig::new("axioms", 3, json!({"r": ["1/1"]}));
        a.input(Path::new("x.til"), "a 1\n");
        let b = a.clone();
        assert_eq!(a.hash(), b.hash());
        let mut c = a.clone();
        c.seed = 4;
        assert_ne!(a.hash(), c.hash());
        assert_eq!(a.hash().len(), 64);
    }
}
