//! Experiment runner for `wavesamp`: configuration, the per-command runners,
//! and artifact output.

pub mod config;
pub mod experiments;

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};

pub use config::{Command, ExperimentConfig, LevelRange};
pub use experiments::{run, Artifacts};

/// Writes `<out>/<stem>.csv` and `<out>/<stem>.json`; returns both paths.
pub fn write_artifacts(out: &Path, a: &Artifacts) -> Result<(PathBuf, PathBuf)> {
    fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    let stem = a.command.file_stem();
    let csv = out.join(format!("{stem}.csv"));
    let json = out.join(format!("{stem}.json"));
    fs::write(&csv, &a.csv).with_context(|| format!("writing {}", csv.display()))?;
    let mut text = serde_json::to_string_pretty(&a.json)?;
    text.push('\n');
    fs::write(&json, text).with_context(|| format!("writing {}", json.display()))?;
    Ok((csv, json))
}
