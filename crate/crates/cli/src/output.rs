use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, SystemTime, UNIX_EPOCH};

use serde::Serialize;
use sha2::{Digest, Sha256};
use time::format_description::well_known::Rfc3339;
use time::OffsetDateTime;

use iabcache::model::SystemConfig;

use crate::error::{CliError, CliResult};

/// Fixed 17-significant-digit rendering used in every CSV.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

/// SHA-256 over the configuration lines sorted by key.
pub fn config_hash(cfg: &SystemConfig<f64>) -> String {
    let text = cfg.to_config_string();
    let mut lines: Vec<&str> = text.lines().collect();
    lines.sort_unstable();
    let mut h = Sha256::new();
    for l in lines {
        h.update(l.as_bytes());
        h.update(b"\n");
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

/// Wall clock, or `SOURCE_DATE_EPOCH` when set so reruns are byte-identical.
pub fn timestamp() -> String {
    let now = match std::env::var("SOURCE_DATE_EPOCH").ok().and_then(|s| s.trim().parse::<u64>().ok()) {
        Some(secs) => UNIX_EPOCH + Duration::from_secs(secs),
        None => SystemTime::now(),
    };
    OffsetDateTime::from(now)
        .replace_nanosecond(0)
        .ok()
        .and_then(|t| t.format(&Rfc3339).ok())
        .unwrap_or_default()
}

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub config_hash: String,
    pub seed: u64,
    pub tool_version: String,
    pub started_at: String,
    pub finished_at: String,
    pub outputs: Vec<String>,
}

/// Collects output files written under one directory.
pub struct OutDir {
    root: PathBuf,
    written: Vec<String>,
}

impl OutDir {
    pub fn create(root: &Path) -> CliResult<Self> {
        fs::create_dir_all(root)?;
        Ok(OutDir {
            root: root.to_path_buf(),
            written: Vec::new(),
        })
    }

    pub fn path(&self, name: &str) -> PathBuf {
        self.root.join(name)
    }

    /// Writes `rows` under `header` to `name`.
    pub fn write_csv(&mut self, name: &str, header: &[&str], rows: &[Vec<String>]) -> CliResult<()> {
        let mut w = csv::Writer::from_path(self.path(name))?;
        w.write_record(header)?;
        for r in rows {
            w.write_record(r)?;
        }
        w.flush()?;
        self.written.push(name.to_string());
        Ok(())
    }

    pub fn write_json<T: Serialize>(&mut self, name: &str, value: &T) -> CliResult<()> {
        let mut text = serde_json::to_string_pretty(value)?;
        text.push('\n');
        fs::write(self.path(name), text)?;
        self.written.push(name.to_string());
        Ok(())
    }

    /// Opens a file for streamed output and records it.
    pub fn create_file(&mut self, name: &str) -> CliResult<std::io::BufWriter<fs::File>> {
        let f = fs::File::create(self.path(name))?;
        self.written.push(name.to_string());
        Ok(std::io::BufWriter::new(f))
    }

    pub fn finish(mut self, command: &str, cfg: &SystemConfig<f64>, seed: u64, started_at: String) -> CliResult<()> {
        self.written.sort();
        let manifest = RunManifest {
            command: command.to_string(),
            config_hash: config_hash(cfg),
            seed,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            started_at,
            finished_at: timestamp(),
            outputs: self.written.clone(),
        };
        let mut text = serde_json::to_string_pretty(&manifest)?;
        text.push('\n');
        fs::write(self.path("manifest.json"), text).map_err(CliError::from)
    }
}
