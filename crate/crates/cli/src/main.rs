use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use wavesamp::{Execution, Normalization};
use wavesamp_cli::{run, write_artifacts, Command, ExperimentConfig, LevelRange};

#[derive(Parser)]
#[command(name = "wavesamp", version, about = "Wavelet sampling operator experiments")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    #[command(flatten)]
    overrides: Overrides,
}

#[derive(Subcommand)]
enum Cmd {
    /// Pointwise errors at t = 0.1, 0.3, …, 0.9 for levels 0..4.
    Table1,
    /// B1 under both integrand readings and the resulting intervals.
    BoundsExample,
    /// Sup errors per level and fitted rates.
    Convergence,
    /// Mallat decomposition of a sample file (default: a 16-sample ramp).
    Dwt,
    /// Quadrature-mirror identities of named filters.
    CheckFilters { names: Vec<String> },
    /// Mass, moments and partition-of-unity defect of named kernels.
    KernelInfo { names: Vec<String> },
}

#[derive(Args)]
struct Overrides {
    /// JSON config file; flags override its fields.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Inclusive level range, e.g. `2..7`.
    #[arg(long, global = true)]
    levels: Option<LevelRange>,
    #[arg(long, global = true)]
    signal: Option<String>,
    /// `paper-literal` or `mass-normalized`.
    #[arg(long, global = true)]
    mode: Option<Normalization>,
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[arg(long, global = true)]
    delta: Option<f64>,
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    #[arg(long, global = true)]
    depth: Option<usize>,
    #[arg(long, global = true)]
    filter: Option<String>,
    #[arg(long, global = true)]
    kappa1: Option<String>,
    #[arg(long, global = true)]
    chi2: Option<String>,
    /// Disable data parallelism.
    #[arg(long, global = true)]
    sequential: bool,
}

fn build_config(cli: Cli) -> Result<ExperimentConfig> {
    let o = cli.overrides;
    let mut cfg = match &o.config {
        Some(p) => ExperimentConfig::from_json(
            &std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?,
        )
        .with_context(|| format!("parsing {}", p.display()))?,
        None => ExperimentConfig::default(),
    };
    let (command, names) = match cli.command {
        Cmd::Table1 => (Command::Table1, vec![]),
        Cmd::BoundsExample => (Command::BoundsExample, vec![]),
        Cmd::Convergence => (Command::Convergence, vec![]),
        Cmd::Dwt => (Command::Dwt, vec![]),
        Cmd::CheckFilters { names } => (Command::CheckFilters, names),
        Cmd::KernelInfo { names } => (Command::KernelInfo, names),
    };
    cfg.command = Some(command);
    if !names.is_empty() {
        cfg.names = names;
    }
    if let Some(v) = o.out {
        cfg.out = v;
    }
    if let Some(v) = o.levels {
        cfg.levels = Some(v);
    }
    if let Some(v) = o.signal {
        cfg.signal = v;
        cfg.inline_signal = None;
    }
    if let Some(v) = o.mode {
        cfg.mode = Some(v);
    }
    if let Some(v) = o.tol {
        cfg.tol = v;
    }
    if let Some(v) = o.delta {
        cfg.delta = v;
    }
    if let Some(v) = o.input {
        cfg.input = Some(v);
    }
    if let Some(v) = o.depth {
        cfg.depth = v;
    }
    if let Some(v) = o.filter {
        cfg.filter = v;
    }
    if let Some(v) = o.kappa1 {
        cfg.kappa1 = v;
    }
    if let Some(v) = o.chi2 {
        cfg.chi2 = v;
    }
    if o.sequential {
        cfg.execution = Execution::Sequential;
    }
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = build_config(cli).and_then(|cfg| {
        let a = run(&cfg)?;
        let (csv, json) = write_artifacts(&cfg.out, &a)?;
        print!("{}", a.summary);
        println!("wrote {} and {}", csv.display(), json.display());
        Ok(a.failure)
    });
    match result {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
