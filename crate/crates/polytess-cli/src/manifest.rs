//! Run manifests written alongside every output file.
//!
//! The manifest records the exact command line, so re-running it reproduces
//! the output byte-for-byte. Timestamps live here and only here; the data
//! files themselves are deterministic.

use crate::CliError;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

pub struct Manifest {
    entries: Vec<(String, String)>,
}

impl Manifest {
    pub fn new() -> Manifest {
        let command: Vec<String> = std::env::args().collect();
        let created = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        Manifest {
            entries: vec![
                ("command".into(), command.join(" ")),
                ("version".into(), env!("CARGO_PKG_VERSION").into()),
                ("created_unix".into(), created.to_string()),
            ],
        }
    }

    pub fn push(&mut self, key: &str, value: impl ToString) {
        self.entries.push((key.into(), value.to_string()));
    }

    /// Write `<output>.manifest.txt` next to the output file.
    pub fn write_for(&self, output: &Path) -> Result<(), CliError> {
        let mut text = String::new();
        for (k, v) in &self.entries {
            text.push_str(&format!("{k} = {v}\n"));
        }
        text.push_str(&format!("output = {}\n", output.display()));
        let mut path = output.as_os_str().to_owned();
        path.push(".manifest.txt");
        std::fs::write(&path, text)
            .map_err(|e| CliError::Io(format!("cannot write manifest next to {}: {e}", output.display())))
    }
}
