//! The experiment runners behind each subcommand.
//!
//! Runners are pure: they build an [`Artifacts`] value (CSV text, JSON value,
//! human summary) and never touch the filesystem. [`crate::write_artifacts`]
//! does the I/O.

use std::f64::consts::PI;
use std::fmt::Write as _;

use anyhow::{bail, Context, Result};
use serde::Serialize;
use serde_json::{json, Value};

use wavesamp::error_bounds::{self, B1Reading};
use wavesamp::kernels::{self, bspline_fourier_centered, kernel_report};
use wavesamp::mra::{self, dwt, qmf_checks, FilterPair};
use wavesamp::operators::{apply_kantorovich, error_curve};
use wavesamp::signal::{self, Signal};
use wavesamp::{Complex64, GridSpec, IntegrationSpec, Normalization, OperatorConfig};

use crate::config::{Command, ExperimentConfig, LevelRange};

pub struct Artifacts {
    pub command: Command,
    pub csv: String,
    pub json: Value,
    pub summary: String,
    /// Set when the run must exit non-zero even though artifacts were produced.
    pub failure: Option<String>,
}

fn fmt(v: f64) -> String {
    format!("{v:.16e}")
}

fn spec(cfg: &ExperimentConfig) -> Result<IntegrationSpec> {
    let s = IntegrationSpec::with_tol(cfg.tol);
    s.validate()?;
    Ok(s)
}

fn operator(cfg: &ExperimentConfig, level: i32, mode: Normalization) -> Result<OperatorConfig> {
    Ok(OperatorConfig::new(level, kernels::kernel_by_name(&cfg.kappa1)?, kernels::kernel_by_name(&cfg.chi2)?)
        .with_normalization(mode)
        .with_integration(spec(cfg)?)
        .with_execution(cfg.execution))
}

/// The configured signal: the inline piecewise polynomial if given, else the preset.
pub fn signal_of(cfg: &ExperimentConfig) -> Result<Signal> {
    match &cfg.inline_signal {
        Some(doc) => {
            let k = wavesamp::PiecewisePolyKernel::try_from(doc.clone())?;
            Ok(Signal::from_kernel(&k))
        }
        None => Ok(signal::preset(&cfg.signal)?),
    }
}

fn modes(cfg: &ExperimentConfig) -> Vec<Normalization> {
    cfg.mode.map_or_else(|| Normalization::ALL.to_vec(), |m| vec![m])
}

pub fn run(cfg: &ExperimentConfig) -> Result<Artifacts> {
    let command = cfg.command.context("no command given")?;
    match command {
        Command::Table1 => run_table1(cfg),
        Command::BoundsExample => run_bounds_example(cfg),
        Command::Convergence => run_convergence(cfg),
        Command::Dwt => run_dwt(cfg),
        Command::CheckFilters => run_check_filters(cfg),
        Command::KernelInfo => run_kernel_info(cfg),
    }
}

// ---------------------------------------------------------------- table1

pub const TABLE1_POINTS: [f64; 5] = [0.1, 0.3, 0.5, 0.7, 0.9];

/// Printed `E(t)` values: rows `t = 0.1 … 0.9`, columns level 0 … 4.
pub const TABLE1_PRINTED: [[f64; 5]; 5] = [
    [0.6537, 0.5878, 0.5878, 0.5878, 0.5878],
    [0.9511, 0.8851, 0.9511, 0.9511, 0.9511],
    [0.0000, 0.0000, 0.0659, 0.0000, 0.0000],
    [0.9511, 0.9511, 0.8851, 0.9511, 0.9511],
    [0.5878, 0.5878, 0.5878, 0.5878, 0.5878],
];

/// Largest printed entry of the `t = 0.5` row, rounded up to the criterion's tolerance.
pub const TABLE1_MIDROW_LIMIT: f64 = 0.07;
pub const TABLE1_MIRROR_VALUE: f64 = 0.8851;
pub const TABLE1_MIRROR_TOL: f64 = 0.07;

/// How the operator sees the signal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SignalReading {
    /// The analytic signal is integrated directly.
    Analytic,
    /// The signal is first replaced by its Haar-held samples at `ϱ/2^j`.
    Sampled,
}

#[derive(Debug, Clone, Serialize)]
pub struct Table1Variant {
    pub reading: SignalReading,
    pub mode: Normalization,
    /// `table[i][k]`: `t = TABLE1_POINTS[i]`, level `levels[k]`.
    pub table: Vec<Vec<f64>>,
    pub rms_vs_printed: Option<f64>,
    pub max_dev_vs_printed: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Table1Checks {
    pub midrow_max: f64,
    pub midrow_ok: bool,
    pub mirror_t03_col1: f64,
    pub mirror_t07_col2: f64,
    pub mirror_ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Table1Result {
    pub signal: String,
    pub levels: Vec<i32>,
    pub points: Vec<f64>,
    pub variants: Vec<Table1Variant>,
    /// Index into `variants` of the best match to the printed table (smallest RMS).
    pub best: usize,
    pub checks: Option<Table1Checks>,
}

pub fn table1(cfg: &ExperimentConfig) -> Result<Table1Result> {
    let h = signal_of(cfg)?;
    let levels = cfg.levels.unwrap_or(LevelRange::new(0, 4)).levels();
    let comparable = cfg.inline_signal.is_none() && cfg.signal == "sin2pi" && levels == [0, 1, 2, 3, 4];
    let mut variants = Vec::new();
    for reading in [SignalReading::Analytic, SignalReading::Sampled] {
        for mode in modes(cfg) {
            let mut table = vec![vec![0.0; levels.len()]; TABLE1_POINTS.len()];
            for (k, &j) in levels.iter().enumerate() {
                let op = operator(cfg, j, mode)?;
                let seen = match reading {
                    SignalReading::Analytic => h.clone(),
                    SignalReading::Sampled => Signal::sampled_from(&h, j)?,
                };
                for (i, &t) in TABLE1_POINTS.iter().enumerate() {
                    table[i][k] = (apply_kantorovich(&op, &seen, t)?.value - h.eval(t)).abs();
                }
            }
            let (rms, max_dev) = if comparable {
                let devs: Vec<f64> =
                    table.iter().flatten().zip(TABLE1_PRINTED.iter().flatten()).map(|(a, b)| (a - b).abs()).collect();
                let rms = (devs.iter().map(|d| d * d).sum::<f64>() / devs.len() as f64).sqrt();
                (Some(rms), Some(devs.iter().copied().fold(0.0, f64::max)))
            } else {
                (None, None)
            };
            variants.push(Table1Variant { reading, mode, table, rms_vs_printed: rms, max_dev_vs_printed: max_dev });
        }
    }
    let best = variants
        .iter()
        .enumerate()
        .min_by(|a, b| {
            let ra = a.1.rms_vs_printed.unwrap_or(f64::INFINITY);
            let rb = b.1.rms_vs_printed.unwrap_or(f64::INFINITY);
            ra.total_cmp(&rb)
        })
        .map(|(i, _)| i)
        .unwrap_or(0);
    let checks = comparable.then(|| {
        let t = &variants[best].table;
        let midrow_max = t[2].iter().copied().fold(0.0, f64::max);
        let (a, b) = (t[1][1], t[3][2]);
        Table1Checks {
            midrow_max,
            midrow_ok: midrow_max <= TABLE1_MIDROW_LIMIT,
            mirror_t03_col1: a,
            mirror_t07_col2: b,
            mirror_ok: (a - TABLE1_MIRROR_VALUE).abs() <= TABLE1_MIRROR_TOL
                && (b - TABLE1_MIRROR_VALUE).abs() <= TABLE1_MIRROR_TOL,
        }
    });
    Ok(Table1Result { signal: h.name().to_string(), levels, points: TABLE1_POINTS.to_vec(), variants, best, checks })
}

fn run_table1(cfg: &ExperimentConfig) -> Result<Artifacts> {
    let r = table1(cfg)?;
    let comparable = r.checks.is_some();
    let mut csv = String::from("reading,mode,t");
    for j in &r.levels {
        let _ = write!(csv, ",E_j{j}");
    }
    if comparable {
        for j in &r.levels {
            let _ = write!(csv, ",printed_j{j}");
        }
    }
    csv.push('\n');
    for v in &r.variants {
        for (i, row) in v.table.iter().enumerate() {
            let reading = serde_json::to_value(v.reading)?;
            let _ = write!(csv, "{},{},{}", reading.as_str().unwrap_or_default(), v.mode.as_str(), fmt(r.points[i]));
            for e in row {
                let _ = write!(csv, ",{}", fmt(*e));
            }
            if comparable {
                for p in TABLE1_PRINTED[i] {
                    let _ = write!(csv, ",{}", fmt(p));
                }
            }
            csv.push('\n');
        }
    }
    let best = &r.variants[r.best];
    let mut summary = format!("best match: {:?} signal, {} mode\n  t     ", best.reading, best.mode.as_str());
    for j in &r.levels {
        let _ = write!(summary, "  j={j:<6}");
    }
    summary.push('\n');
    for (i, row) in best.table.iter().enumerate() {
        let _ = write!(summary, "  {:.4}", r.points[i]);
        for e in row {
            let _ = write!(summary, "  {e:.4}  ");
        }
        summary.push('\n');
    }
    if let Some(c) = &r.checks {
        let _ = writeln!(summary, "  E(0.5) max {:.4} (ok: {}), mirror {:.4}/{:.4} (ok: {})",
            c.midrow_max, c.midrow_ok, c.mirror_t03_col1, c.mirror_t07_col2, c.mirror_ok);
    }
    Ok(Artifacts { command: Command::Table1, csv, json: serde_json::to_value(&r)?, summary, failure: None })
}

// ------------------------------------------------------- bounds-example

pub const EXAMPLE2_LOWER: f64 = 0.00866839702279679;
pub const EXAMPLE2_UPPER: f64 = 0.024626088238854097;
pub const EXAMPLE2_LEVEL: i32 = 2;
pub const EXAMPLE2_DELTA: f64 = 0.01;
pub const EXAMPLE2_MATCH_TOL: f64 = 1e-6;
pub const EXAMPLE2_LOOSE_TOL: f64 = 1e-3;

fn sinc4(w: f64) -> Complex64 {
    Complex64::from(bspline_fourier_centered(3, w))
}

#[derive(Debug, Clone, Serialize)]
pub struct ReadingOutcome {
    pub reading: B1Reading,
    pub b1: f64,
    pub lower: f64,
    pub upper: f64,
    pub clamped: bool,
    pub width: f64,
    /// `max(|lower - printed lower|, |upper - printed upper|)`
    pub distance_to_printed: f64,
    pub matches: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundsExampleResult {
    pub level: i32,
    pub delta: f64,
    pub printed: (f64, f64),
    /// `B1` solved from the printed upper endpoint.
    pub implied_b1: f64,
    /// `|(upper - lower) - 4δ/√(2π)|` for the printed endpoints.
    pub printed_width_defect: f64,
    pub expected_width: f64,
    pub readings: Vec<ReadingOutcome>,
    pub best_reading: B1Reading,
    pub any_match: bool,
    pub b2: error_bounds::BoundReport,
    pub b3: f64,
    pub prop3_total: f64,
}

pub fn bounds_example(cfg: &ExperimentConfig) -> Result<BoundsExampleResult> {
    let spec = spec(cfg)?;
    let level = cfg.levels.map_or(EXAMPLE2_LEVEL, |l| l.start);
    let delta = cfg.delta;
    let mut readings = Vec::new();
    for reading in B1Reading::ALL {
        let b1 = error_bounds::b1(sinc4, sinc4, level, reading, &spec)?;
        let iv = error_bounds::prop2_interval(b1, delta)?;
        let distance = (iv.lower - EXAMPLE2_LOWER).abs().max((iv.upper - EXAMPLE2_UPPER).abs());
        readings.push(ReadingOutcome {
            reading,
            b1,
            lower: iv.lower,
            upper: iv.upper,
            clamped: iv.clamped,
            width: iv.width(),
            distance_to_printed: distance,
            matches: distance <= EXAMPLE2_MATCH_TOL,
        });
    }
    let best = readings
        .iter()
        .min_by(|a, b| a.distance_to_printed.total_cmp(&b.distance_to_printed))
        .expect("two readings");
    let b2 = error_bounds::b2(sinc4, sinc4, level, -64..=64, (-PI, PI), &spec, cfg.execution)?;
    let b3 = error_bounds::b3(sinc4, sinc4, level, best.reading, &spec)?;
    Ok(BoundsExampleResult {
        level,
        delta,
        printed: (EXAMPLE2_LOWER, EXAMPLE2_UPPER),
        implied_b1: EXAMPLE2_UPPER - error_bounds::prop2_halfwidth(EXAMPLE2_DELTA),
        printed_width_defect: ((EXAMPLE2_UPPER - EXAMPLE2_LOWER) - 4.0 * EXAMPLE2_DELTA / (2.0 * PI).sqrt()).abs(),
        expected_width: 4.0 * delta / (2.0 * PI).sqrt(),
        best_reading: best.reading,
        any_match: readings.iter().any(|r| r.matches),
        prop3_total: error_bounds::prop3_total(best.b1, b3)?,
        readings,
        b2,
        b3,
    })
}

fn run_bounds_example(cfg: &ExperimentConfig) -> Result<Artifacts> {
    let r = bounds_example(cfg)?;
    let mut csv = String::from("reading,B1,lower,upper,width,distance_to_printed,matches\n");
    for o in &r.readings {
        let name = serde_json::to_value(o.reading)?;
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{},{}",
            name.as_str().unwrap_or_default(),
            fmt(o.b1),
            fmt(o.lower),
            fmt(o.upper),
            fmt(o.width),
            fmt(o.distance_to_printed),
            o.matches
        );
    }
    let mut summary = format!("J = {}, δ = {}\n", r.level, r.delta);
    for o in &r.readings {
        let _ = writeln!(
            summary,
            "  {:?}: B1 = {:.17}  interval [{:.17}, {:.17}]  distance {:.3e}",
            o.reading, o.b1, o.lower, o.upper, o.distance_to_printed
        );
    }
    let _ = writeln!(summary, "  printed [{EXAMPLE2_LOWER}, {EXAMPLE2_UPPER}], implied B1 = {:.17}", r.implied_b1);
    let _ = writeln!(summary, "  B2 = {:.17}, B3 = {:.17}, total = {:.17}", r.b2.value, r.b3, r.prop3_total);
    let is_example = r.level == EXAMPLE2_LEVEL && r.delta == EXAMPLE2_DELTA;
    let best = r.readings.iter().map(|o| o.distance_to_printed).fold(f64::INFINITY, f64::min);
    let failure = (is_example && best > EXAMPLE2_LOOSE_TOL)
        .then(|| format!("no reading reproduces the printed interval within {EXAMPLE2_LOOSE_TOL:e} (best {best:e})"));
    Ok(Artifacts { command: Command::BoundsExample, csv, json: serde_json::to_value(&r)?, summary, failure })
}

// ---------------------------------------------------------- convergence

pub const SMOOTH_MARGIN: f64 = 0.05;
pub const EDGE_HALF_WIDTH: f64 = 0.05;
/// Sup errors at or below this are treated as exact reproduction.
pub const ERROR_FLOOR: f64 = 1e-10;

/// Known `sup |h'|` for presets, used by the first-order moment bound.
pub fn derivative_sup(preset: &str) -> Option<f64> {
    match preset {
        "sin2pi" => Some(2.0 * PI),
        "ramp" => Some(1.0),
        "constant" | "zero" => Some(0.0),
        _ => None,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LevelRow {
    pub level: i32,
    pub smooth_points: usize,
    pub smooth_sup: f64,
    pub edge_points: usize,
    pub edge_sup: Option<f64>,
    /// Smallest pointwise first-order moment bound over the smooth points.
    pub bound_min: Option<f64>,
    pub bound_violations: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum RateFit {
    /// Slope fitted over the levels whose error is above the floor.
    Fitted { rate: f64, levels_used: Vec<i32> },
    /// Fewer than three errors above the floor; a slope would be meaningless.
    AtFloor,
    NotApplicable,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceResult {
    pub signal: String,
    pub mode: Normalization,
    pub rows: Vec<LevelRow>,
    pub smooth_rate: RateFit,
    pub edge_rate: RateFit,
    pub discontinuities: Vec<f64>,
}

fn fit(levels: &[i32], errors: &[f64]) -> Result<RateFit> {
    let (used, kept): (Vec<i32>, Vec<f64>) =
        levels.iter().zip(errors).filter(|(_, &e)| e > ERROR_FLOOR).map(|(&l, &e)| (l, e)).unzip();
    if used.len() < 3 {
        return Ok(RateFit::AtFloor);
    }
    Ok(RateFit::Fitted { rate: error_bounds::empirical_rate(&used, &kept)?, levels_used: used })
}

pub fn convergence(cfg: &ExperimentConfig) -> Result<ConvergenceResult> {
    let h = signal_of(cfg)?;
    let levels = cfg.levels.unwrap_or(LevelRange::new(2, 7)).levels();
    if levels.len() < 3 {
        bail!("a convergence study needs at least 3 levels, got {}", levels.len());
    }
    let mode = cfg.mode.unwrap_or(Normalization::MassNormalized);
    let (lo, hi) = h.domain();
    let disc: Vec<f64> = h.discontinuities().iter().copied().filter(|d| *d > lo && *d < hi).collect();
    let near_edge = |t: f64| disc.iter().any(|d| (t - d).abs() <= EDGE_HALF_WIDTH);
    let smooth_grid = GridSpec::new(lo + SMOOTH_MARGIN, hi - SMOOTH_MARGIN, 1025)?;
    let wavelet = kernels::haar_wavelet();
    let ispec = spec(cfg)?;
    let mut rows = Vec::new();
    for &j in &levels {
        let op = operator(cfg, j, mode)?;
        let curve = error_curve(&op, &h, &smooth_grid)?;
        let smooth: Vec<(f64, f64)> =
            curve.points.iter().zip(&curve.values).map(|(t, e)| (*t, *e)).filter(|(t, _)| !near_edge(*t)).collect();
        let smooth_sup = smooth.iter().map(|p| p.1).fold(0.0, f64::max);
        let mut edge_sup = None;
        let mut edge_points = 0;
        for d in &disc {
            let g = GridSpec::new(d - EDGE_HALF_WIDTH, d + EDGE_HALF_WIDTH, 2001)?;
            let c = error_curve(&op, &h, &g)?;
            edge_points += c.points.len();
            edge_sup = Some(edge_sup.unwrap_or(0.0f64).max(c.sup_error));
        }
        let (bound_min, bound_violations) = match derivative_sup(&cfg.signal).filter(|_| cfg.inline_signal.is_none()) {
            Some(k) => {
                let mut min = f64::INFINITY;
                let mut violations = 0;
                for (t, e) in &smooth {
                    let b = error_bounds::vanishing_moment_bound(k, &wavelet, &op.kappa1, 1, j, *t, &ispec)?.value;
                    min = min.min(b);
                    if *e > b {
                        violations += 1;
                    }
                }
                (Some(min), Some(violations))
            }
            None => (None, None),
        };
        rows.push(LevelRow {
            level: j,
            smooth_points: smooth.len(),
            smooth_sup,
            edge_points,
            edge_sup,
            bound_min,
            bound_violations,
        });
    }
    let smooth_rate = fit(&levels, &rows.iter().map(|r| r.smooth_sup).collect::<Vec<_>>())?;
    let edge_rate = if disc.is_empty() {
        RateFit::NotApplicable
    } else {
        fit(&levels, &rows.iter().map(|r| r.edge_sup.unwrap_or(0.0)).collect::<Vec<_>>())?
    };
    Ok(ConvergenceResult { signal: h.name().to_string(), mode, rows, smooth_rate, edge_rate, discontinuities: disc })
}

fn run_convergence(cfg: &ExperimentConfig) -> Result<Artifacts> {
    let r = convergence(cfg)?;
    let mut csv = String::from("level,region,points,sup_error,bound\n");
    for row in &r.rows {
        let bound = row.bound_min.map(fmt).unwrap_or_default();
        let _ = writeln!(csv, "{},smooth,{},{},{}", row.level, row.smooth_points, fmt(row.smooth_sup), bound);
        if let Some(e) = row.edge_sup {
            let _ = writeln!(csv, "{},edge,{},{},", row.level, row.edge_points, fmt(e));
        }
    }
    let mut summary = format!("{} ({} mode)\n", r.signal, r.mode.as_str());
    for row in &r.rows {
        let _ = write!(summary, "  j={:<3} smooth sup {:.6e}", row.level, row.smooth_sup);
        if let Some(e) = row.edge_sup {
            let _ = write!(summary, "  edge sup {e:.6e}");
        }
        if let Some(b) = row.bound_min {
            let _ = write!(summary, "  bound {b:.6e}");
        }
        summary.push('\n');
    }
    let _ = writeln!(summary, "  smooth rate: {:?}\n  edge rate: {:?}", r.smooth_rate, r.edge_rate);
    Ok(Artifacts { command: Command::Convergence, csv, json: serde_json::to_value(&r)?, summary, failure: None })
}

// ------------------------------------------------------------------ dwt

pub fn parse_samples(text: &str) -> Result<Vec<f64>> {
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<f64>().with_context(|| format!("not a number: `{s}`")))
        .collect()
}

/// Sixteen samples of the ramp `k/16`.
pub fn default_ramp() -> Vec<f64> {
    (0..16).map(|k| k as f64 / 16.0).collect()
}

fn run_dwt(cfg: &ExperimentConfig) -> Result<Artifacts> {
    let samples = match &cfg.input {
        Some(path) => parse_samples(
            &std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?,
        )?,
        None => default_ramp(),
    };
    let filter = FilterPair::by_name(&cfg.filter)?;
    let top = samples.len().next_power_of_two().ilog2() as i32;
    let coeffs = dwt(&samples, &filter, top, cfg.depth)?;
    let mut csv = String::from("level,kind,index,value\n");
    for (kind, map) in [("approx", &coeffs.approx), ("detail", &coeffs.detail)] {
        for (level, values) in map.iter().rev() {
            for (i, v) in values.iter().enumerate() {
                let _ = writeln!(csv, "{level},{kind},{i},{}", fmt(*v));
            }
        }
    }
    let mut summary = format!("{} samples, filter {}, {} levels\n", samples.len(), filter.name, cfg.depth);
    for (level, d) in coeffs.detail.iter().rev() {
        let _ = writeln!(summary, "  b_{level}: {d:?}");
    }
    let json = json!({ "filter": filter.name, "coefficients": coeffs });
    Ok(Artifacts { command: Command::Dwt, csv, json, summary, failure: None })
}

// -------------------------------------------------------- check-filters

fn run_check_filters(cfg: &ExperimentConfig) -> Result<Artifacts> {
    let names: Vec<String> = if cfg.names.is_empty() {
        FilterPair::NAMES.iter().map(|s| s.to_string()).collect()
    } else {
        cfg.names.clone()
    };
    let reports = names
        .iter()
        .map(|n| FilterPair::by_name(n).map(|f| qmf_checks(&f)))
        .collect::<wavesamp::Result<Vec<_>>>()?;
    let mut csv = String::from("name,normality_defect,orthogonality_defect,smoothness_order\n");
    let mut summary = String::new();
    for r in &reports {
        let _ = writeln!(csv, "{},{},{},{}", r.name, fmt(r.normality_defect), fmt(r.orthogonality_defect), r.smoothness_order);
        let _ = writeln!(
            summary,
            "{:<16} normality {:.3e}  orthogonality {:.3e} ({} samples)  I = {}",
            r.name, r.normality_defect, r.orthogonality_defect, r.orthogonality_samples, r.smoothness_order
        );
    }
    Ok(Artifacts { command: Command::CheckFilters, csv, json: serde_json::to_value(&reports)?, summary, failure: None })
}

// ---------------------------------------------------------- kernel-info

pub const DEFAULT_KERNELS: &[&str] =
    &["haar", "haar-wavelet", "bspline1", "bspline2", "bspline3", "example1-quadratic", "example2-cubic-half", "example2-cubic-symmetric"];

fn run_kernel_info(cfg: &ExperimentConfig) -> Result<Artifacts> {
    let names: Vec<String> = if cfg.names.is_empty() {
        DEFAULT_KERNELS.iter().map(|s| s.to_string()).collect()
    } else {
        cfg.names.clone()
    };
    let spec = spec(cfg)?;
    let mut reports = Vec::new();
    for n in &names {
        reports.push(kernel_report(&kernels::kernel_by_name(n)?, 2, &spec)?);
    }
    let mut csv = String::from(
        "name,support_lo,support_hi,total_mass,partition_of_unity_defect,vanishing_moments,abs_moment_0,abs_moment_1,abs_moment_2,cardinal_defect_standard,cardinal_defect_reversed\n",
    );
    let mut summary = String::new();
    for r in &reports {
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{},{},{},{},{},{}",
            r.name,
            fmt(r.support.0),
            fmt(r.support.1),
            fmt(r.total_mass),
            fmt(r.partition_of_unity_defect),
            r.vanishing_moments,
            fmt(r.abs_moments[0]),
            fmt(r.abs_moments[1]),
            fmt(r.abs_moments[2]),
            fmt(r.cardinal_defect_standard),
            fmt(r.cardinal_defect_reversed)
        );
        let _ = writeln!(
            summary,
            "{:<26} support [{}, {}]  mass {:.12}  partition defect {:.3e}  vanishing moments {}",
            r.name, r.support.0, r.support.1, r.total_mass, r.partition_of_unity_defect, r.vanishing_moments
        );
    }
    Ok(Artifacts { command: Command::KernelInfo, csv, json: serde_json::to_value(&reports)?, summary, failure: None })
}

/// Cascade of a named filter on a grid covering its support; used by tests and
/// the acceptance suite.
pub fn cascade_vs_bspline1(points: usize) -> Result<f64> {
    let f = FilterPair::linear_bspline();
    let grid = GridSpec::new(-0.5, 2.5, points)?;
    let r = mra::cascade(&f, &mra::CascadeSpec::default(), &grid)?;
    let hat = kernels::bspline(1)?;
    Ok(grid.nodes().iter().zip(&r.values).map(|(t, v)| (hat.evaluate(*t) - v).abs()).fold(0.0, f64::max))
}
