use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::config::{LoadedConfig, SCHEMA_VERSION};
use crate::error::{CliError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    fn as_str(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Serialize)]
struct FileRecord {
    name: String,
    bytes: u64,
    sha256: String,
}

#[derive(Serialize)]
struct Manifest<'a> {
    command: &'a str,
    schema_version: u32,
    config_source: &'a str,
    config_sha256: &'a str,
    format: &'a str,
    files: &'a [FileRecord],
}

/// Collects artifacts for one command run and closes with a manifest that
/// hashes both the input config and every file written. Runs are fully
/// deterministic: same binary, same config, same bytes.
pub struct Emitter {
    dir: PathBuf,
    format: Format,
    command: String,
    config_source: String,
    config_sha256: String,
    files: Vec<FileRecord>,
}

impl Emitter {
    pub fn new(dir: &Path, format: Format, command: &str, loaded: &LoadedConfig) -> Result<Self> {
        fs::create_dir_all(dir)?;
        Ok(Emitter {
            dir: dir.to_path_buf(),
            format,
            command: command.to_string(),
            config_source: loaded.source.clone(),
            config_sha256: hex_sha256(&loaded.bytes),
            files: Vec::new(),
        })
    }

    fn record(&mut self, name: &str, bytes: &[u8]) -> Result<()> {
        fs::write(self.dir.join(name), bytes)?;
        self.files.push(FileRecord {
            name: name.to_string(),
            bytes: bytes.len() as u64,
            sha256: hex_sha256(bytes),
        });
        Ok(())
    }

    pub fn write_json<T: Serialize>(&mut self, stem: &str, value: &T) -> Result<()> {
        let mut text = serde_json::to_string_pretty(value)
            .map_err(|e| CliError::Io(format!("serializing {stem}: {e}")))?;
        text.push('\n');
        self.record(&format!("{stem}.json"), text.as_bytes())
    }

    /// Tabular artifact; lands as CSV ('.' decimal separator, ',' delimiter,
    /// one header row) or as a {header, rows} JSON object per `--format`.
    pub fn write_table(&mut self, stem: &str, header: &[String], rows: &[Vec<f64>]) -> Result<()> {
        for row in rows {
            if row.len() != header.len() {
                return Err(CliError::Io(format!(
                    "table {stem}: row width {} against {} header cells",
                    row.len(),
                    header.len()
                )));
            }
        }
        match self.format {
            Format::Csv => {
                let mut text = String::new();
                text.push_str(&header.join(","));
                text.push('\n');
                for row in rows {
                    let cells: Vec<String> = row.iter().map(|&v| format_float(v)).collect();
                    text.push_str(&cells.join(","));
                    text.push('\n');
                }
                self.record(&format!("{stem}.csv"), text.as_bytes())
            }
            Format::Json => {
                #[derive(Serialize)]
                struct Table<'a> {
                    header: &'a [String],
                    rows: &'a [Vec<f64>],
                }
                self.write_json(stem, &Table { header, rows })
            }
        }
    }

    /// Writes `manifest.json` (not listed in itself) and returns the names
    /// of everything the run produced.
    pub fn finish(self) -> Result<Vec<String>> {
        let manifest = Manifest {
            command: &self.command,
            schema_version: SCHEMA_VERSION,
            config_source: &self.config_source,
            config_sha256: &self.config_sha256,
            format: self.format.as_str(),
            files: &self.files,
        };
        let mut text = serde_json::to_string_pretty(&manifest)
            .map_err(|e| CliError::Io(format!("serializing manifest: {e}")))?;
        text.push('\n');
        fs::write(self.dir.join("manifest.json"), text.as_bytes())?;
        let mut names: Vec<String> = self.files.into_iter().map(|f| f.name).collect();
        names.push("manifest.json".to_string());
        Ok(names)
    }
}

/// Shortest round-trip decimal; "-0" is folded into "0" so identical values
/// always print identically.
fn format_float(v: f64) -> String {
    if v == 0.0 {
        "0".to_string()
    } else {
        format!("{v}")
    }
}

fn hex_sha256(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    let mut out = String::with_capacity(64);
    for byte in digest {
        out.push_str(&format!("{byte:02x}"));
    }
    out
}

pub fn header(cells: &[&str]) -> Vec<String> {
    cells.iter().map(|c| c.to_string()).collect()
}
