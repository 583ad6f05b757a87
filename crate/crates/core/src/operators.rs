//! Sampling operators and pointwise error curves.
//!
//! The Kantorovich operator at level `j` is
//!
//! ```text
//! (W h)(t) = Σ_ϱ κ1(2^j t - ϱ) · c · ∫ h(u) χ2(2^j u - ϱ) du
//! ```
//!
//! with `c = 1` in [`Normalization::PaperLiteral`] and `c = 2^j / ∫χ2` in
//! [`Normalization::MassNormalized`]; the latter reproduces constants whenever
//! the translates of `κ1` sum to one. Only the finitely many `ϱ` with
//! `2^j t - ϱ` in the support of `κ1` are visited.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernels::{self, PiecewisePolyKernel};
use crate::numerics::{GridSpec, IntegrationSpec};
use crate::parallel::{try_map_indices, Execution};
use crate::signal::Signal;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Normalization {
    PaperLiteral,
    #[default]
    MassNormalized,
}

impl Normalization {
    pub const ALL: [Normalization; 2] = [Normalization::PaperLiteral, Normalization::MassNormalized];

    pub fn as_str(self) -> &'static str {
        match self {
            Normalization::PaperLiteral => "paper-literal",
            Normalization::MassNormalized => "mass-normalized",
        }
    }
}

impl std::str::FromStr for Normalization {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper-literal" => Ok(Normalization::PaperLiteral),
            "mass-normalized" => Ok(Normalization::MassNormalized),
            _ => Err(Error::UnknownName(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperatorConfig {
    pub level_j: i32,
    pub kappa1: PiecewisePolyKernel,
    pub chi2: PiecewisePolyKernel,
    #[serde(default)]
    pub normalization: Normalization,
    #[serde(default)]
    pub integration: IntegrationSpec,
    #[serde(default)]
    pub execution: Execution,
}

impl OperatorConfig {
    pub fn new(level_j: i32, kappa1: PiecewisePolyKernel, chi2: PiecewisePolyKernel) -> Self {
        OperatorConfig {
            level_j,
            kappa1,
            chi2,
            normalization: Normalization::default(),
            integration: IntegrationSpec::default(),
            execution: Execution::default(),
        }
    }

    /// Haar reconstruction and integral kernels.
    pub fn haar(level_j: i32) -> Self {
        Self::new(level_j, kernels::haar(), kernels::haar())
    }

    pub fn with_normalization(mut self, n: Normalization) -> Self {
        self.normalization = n;
        self
    }

    pub fn with_integration(mut self, spec: IntegrationSpec) -> Self {
        self.integration = spec;
        self
    }

    pub fn with_execution(mut self, exec: Execution) -> Self {
        self.execution = exec;
        self
    }

    pub fn at_level(&self, level_j: i32) -> Self {
        OperatorConfig { level_j, ..self.clone() }
    }

    pub fn scale(&self) -> f64 {
        2f64.powi(self.level_j)
    }

    /// Factor in front of each inner integral.
    pub fn inner_weight(&self) -> Result<f64> {
        match self.normalization {
            Normalization::PaperLiteral => Ok(1.0),
            Normalization::MassNormalized => {
                let mass = self.chi2.mass();
                if mass.abs() < 1e-14 {
                    return Err(Error::DegenerateKernel(format!(
                        "{} has zero mass; mass normalization is undefined",
                        self.chi2.name()
                    )));
                }
                Ok(self.scale() / mass)
            }
        }
    }
}

/// Operator value plus whether any kernel translate covered the point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Evaluation {
    pub value: f64,
    /// `false` when `t` maps to no translate of `κ1`; the value is then 0.
    pub active: bool,
}

/// Shared sum `Σ_ϱ κ1(s t - ϱ) · weight · ∫ h(u) χ2(s u - ϱ) du`.
fn sampling_sum(
    kappa1: &PiecewisePolyKernel,
    chi2: &PiecewisePolyKernel,
    scale: f64,
    weight: f64,
    h: &Signal,
    t: f64,
    spec: &IntegrationSpec,
) -> Result<Evaluation> {
    let x = scale * t;
    let (a, b) = kappa1.support();
    let first = (x - b).floor() as i64 + 1;
    let last = (x - a).floor() as i64;
    let mut value = 0.0;
    for r in first..=last {
        let k = kappa1.evaluate(x - r as f64);
        if k == 0.0 {
            continue;
        }
        // u = (y + ϱ)/s, du = dy/s
        let inner = h.integrate_against(chi2, 1.0 / scale, r as f64 / scale, false, spec)? / scale;
        value += k * weight * inner;
    }
    Ok(Evaluation { value, active: first <= last })
}

pub fn apply_kantorovich(config: &OperatorConfig, h: &Signal, t: f64) -> Result<Evaluation> {
    sampling_sum(&config.kappa1, &config.chi2, config.scale(), config.inner_weight()?, h, t, &config.integration)
}

/// Durrmeyer-type operator `Σ_ϱ (w ∫ χ2(w u - ϱ) f(u) du) κ1(w t - ϱ)` at an
/// arbitrary scale `w > 0`, using the config's kernels and tolerance.
pub fn apply_durrmeyer(config: &OperatorConfig, f: &Signal, w: f64, t: f64) -> Result<Evaluation> {
    if !(w > 0.0 && w.is_finite()) {
        return Err(Error::InvalidInput(format!("scale w must be positive, got {w}")));
    }
    sampling_sum(&config.kappa1, &config.chi2, w, w, f, t, &config.integration)
}

/// Whether the dyadic reconstruction carries the `2^{-J}` prefactor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Prefactor {
    /// `2^{-J} Σ_ϱ h(ϱ/2^J) κ(2^J t - ϱ)`, as printed.
    Literal,
    /// `Σ_ϱ h(ϱ/2^J) κ(2^J t - ϱ)`, which reproduces constants.
    #[default]
    None,
}

pub fn reconstruct_samples(level: i32, h: &Signal, kappa: &PiecewisePolyKernel, t: f64, prefactor: Prefactor) -> f64 {
    let scale = 2f64.powi(level);
    let x = scale * t;
    let (a, b) = kappa.support();
    let first = (x - b).floor() as i64 + 1;
    let last = (x - a).floor() as i64;
    let sum: f64 = (first..=last).map(|r| h.eval(r as f64 / scale) * kappa.evaluate(x - r as f64)).sum();
    match prefactor {
        Prefactor::Literal => sum / scale,
        Prefactor::None => sum,
    }
}

/// Config echo carried by reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigSummary {
    pub level_j: i32,
    pub kappa1: String,
    pub chi2: String,
    pub normalization: Normalization,
    pub abs_tol: f64,
}

impl From<&OperatorConfig> for ConfigSummary {
    fn from(c: &OperatorConfig) -> Self {
        ConfigSummary {
            level_j: c.level_j,
            kappa1: c.kappa1.name().to_string(),
            chi2: c.chi2.name().to_string(),
            normalization: c.normalization,
            abs_tol: c.integration.abs_tol,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub signal: String,
    pub config: ConfigSummary,
    pub grid: GridSpec,
    /// Exact grid spacing `(hi - lo)/(points - 1)`.
    pub spacing: f64,
    pub points: Vec<f64>,
    pub values: Vec<f64>,
    pub sup_error: f64,
    /// Grid points that no translate of `κ1` covered.
    pub inactive_points: usize,
}

impl ErrorReport {
    /// `t,E,level,mode` rows with 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,E,level,mode\n");
        for (t, e) in self.points.iter().zip(&self.values) {
            let _ = writeln!(out, "{t:.16e},{e:.16e},{},{}", self.config.level_j, self.config.normalization.as_str());
        }
        out
    }
}

/// `E(t) = |(W h)(t) - h(t)|` at every grid node.
pub fn error_curve(config: &OperatorConfig, h: &Signal, grid: &GridSpec) -> Result<ErrorReport> {
    let points = grid.nodes();
    let evals = try_map_indices(points.len(), config.execution, |i| {
        let t = points[i];
        apply_kantorovich(config, h, t).map(|e| ((e.value - h.eval(t)).abs(), e.active))
    })?;
    let values: Vec<f64> = evals.iter().map(|e| e.0).collect();
    let sup_error = values.iter().copied().fold(0.0, f64::max);
    Ok(ErrorReport {
        signal: h.name().to_string(),
        config: config.into(),
        grid: *grid,
        spacing: grid.spacing(),
        points,
        inactive_points: evals.iter().filter(|e| !e.1).count(),
        values,
        sup_error,
    })
}

/// One [`error_curve`] per level.
pub fn level_sweep(config: &OperatorConfig, h: &Signal, levels: &[i32], grid: &GridSpec) -> Result<Vec<ErrorReport>> {
    levels.iter().map(|&j| error_curve(&config.at_level(j), h, grid)).collect()
}
