use std::path::Path;
use std::time::Duration;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::commands::{json, Outcome};

/// Record of one invocation. Everything except `elapsed_ms` is a function of
/// the parameters.
#[derive(Serialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: Vec<String>,
    pub fingerprints: Vec<String>,
    pub tool_version: &'static str,
    pub elapsed_ms: u128,
    pub result_digest: String,
}

impl RunManifest {
    pub fn new(outcome: &Outcome, elapsed: Duration) -> Self {
        let argv: Vec<String> = std::env::args().skip(1).collect();
        // --jobs and --manifest do not influence results
        let mut parameters = Vec::new();
        let mut skip = false;
        for a in &argv {
            if skip {
                skip = false;
                continue;
            }
            if a == "--jobs" || a == "--manifest" {
                skip = true;
                continue;
            }
            if a.starts_with("--jobs=") || a.starts_with("--manifest=") {
                continue;
            }
            parameters.push(a.clone());
        }
        RunManifest {
            command: parameters.first().cloned().unwrap_or_default(),
            parameters,
            fingerprints: outcome.fingerprints.clone(),
            tool_version: env!("CARGO_PKG_VERSION"),
            elapsed_ms: elapsed.as_millis(),
            result_digest: hex::encode(Sha256::digest(outcome.stdout.as_bytes())),
        }
    }

    pub fn write(&self, path: &Path) -> anyhow::Result<()> {
        std::fs::write(path, json(self)?)?;
        Ok(())
    }
}
