use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use wavesamp::kernels::KernelDocument;
use wavesamp::{Execution, Normalization};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Table1,
    BoundsExample,
    Convergence,
    Dwt,
    CheckFilters,
    KernelInfo,
}

impl Command {
    pub fn file_stem(self) -> &'static str {
        match self {
            Command::Table1 => "table1",
            Command::BoundsExample => "bounds-example",
            Command::Convergence => "convergence",
            Command::Dwt => "dwt",
            Command::CheckFilters => "check-filters",
            Command::KernelInfo => "kernel-info",
        }
    }
}

/// Inclusive level range written `a..b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelRange {
    pub start: i32,
    pub end: i32,
}

impl LevelRange {
    pub fn new(start: i32, end: i32) -> Self {
        LevelRange { start, end }
    }

    pub fn levels(&self) -> Vec<i32> {
        (self.start..=self.end).collect()
    }
}

impl FromStr for LevelRange {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let (a, b) = s.split_once("..").ok_or_else(|| format!("expected `a..b`, got `{s}`"))?;
        let start = a.trim().parse::<i32>().map_err(|e| format!("bad start `{a}`: {e}"))?;
        let end = b.trim_start_matches('=').trim().parse::<i32>().map_err(|e| format!("bad end `{b}`: {e}"))?;
        if end < start {
            return Err(format!("empty level range {start}..{end}"));
        }
        Ok(LevelRange { start, end })
    }
}

impl fmt::Display for LevelRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

/// Everything a run needs. Stored as JSON; command-line flags override fields.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub command: Option<Command>,
    /// Signal preset name; ignored when `inline_signal` is set.
    pub signal: String,
    /// A piecewise polynomial given in kernel form (local coordinates per piece).
    pub inline_signal: Option<KernelDocument>,
    pub kappa1: String,
    pub chi2: String,
    /// Command-specific default when absent.
    pub levels: Option<LevelRange>,
    pub out: PathBuf,
    pub tol: f64,
    /// Both modes where applicable when absent.
    pub mode: Option<Normalization>,
    pub delta: f64,
    /// Sample file for `dwt` (numbers separated by whitespace or commas).
    pub input: Option<PathBuf>,
    /// Number of DWT levels.
    pub depth: usize,
    pub filter: String,
    /// Filter or kernel names for `check-filters` / `kernel-info`.
    pub names: Vec<String>,
    pub execution: Execution,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            command: None,
            signal: "sin2pi".into(),
            inline_signal: None,
            kappa1: "haar".into(),
            chi2: "haar".into(),
            levels: None,
            out: PathBuf::from("out"),
            tol: 1e-10,
            mode: None,
            delta: 0.01,
            input: None,
            depth: 2,
            filter: "haar".into(),
            names: Vec::new(),
            execution: Execution::default(),
        }
    }
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> anyhow::Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }
}
