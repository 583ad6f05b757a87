//! Multiresolution machinery.
//!
//! Filters use the `Σ h1 = 2` normalization with a `½` in front of every
//! recursion sum:
//!
//! ```text
//! L(ω)       = ½ Σ_k h1_k e^{-ikω}
//! h2_k       = (-1)^k h1_{1-k}
//! c_{j-1}[ϱ] = ½ Σ_k h1_k c_j[2ϱ + k]
//! b_{j-1}[ϱ] = ½ Σ_k h2_k c_j[2ϱ + k]
//! ```
//!
//! With orthonormal coefficients on the finest level, one step of this
//! recursion yields orthonormal coefficients scaled by `2^{-1/2}`, so the energy
//! identity reads `Σ c_j² = 2 (Σ c_{j-1}² + Σ b_{j-1}²)`.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernels::PiecewisePolyKernel;
use crate::numerics::{self, GridSpec, IntegrationSpec};
use crate::parallel::{try_map_indices, Execution};
use crate::signal::Signal;

/// Low-pass impulse response `h1_k` for `k = offset, offset + 1, ...`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FilterPair {
    pub name: String,
    pub h1: Vec<f64>,
    #[serde(default)]
    pub offset: i64,
}

impl FilterPair {
    pub fn new(name: impl Into<String>, h1: Vec<f64>, offset: i64) -> Result<Self> {
        if h1.is_empty() || h1.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("h1 must be a non-empty finite array".into()));
        }
        Ok(FilterPair { name: name.into(), h1, offset })
    }

    pub fn haar() -> Self {
        FilterPair { name: "haar".into(), h1: vec![1.0, 1.0], offset: 0 }
    }

    /// Two-scale filter of the hat function on `[0, 2]`.
    pub fn linear_bspline() -> Self {
        FilterPair { name: "linear-bspline".into(), h1: vec![0.5, 1.0, 0.5], offset: 0 }
    }

    pub fn lazy() -> Self {
        FilterPair { name: "lazy".into(), h1: vec![2.0], offset: 0 }
    }

    pub fn scaled_haar() -> Self {
        FilterPair { name: "scaled-haar".into(), h1: vec![0.5, 0.5], offset: 0 }
    }

    pub fn by_name(name: &str) -> Result<Self> {
        match name {
            "haar" => Ok(Self::haar()),
            "linear-bspline" => Ok(Self::linear_bspline()),
            "lazy" => Ok(Self::lazy()),
            "scaled-haar" => Ok(Self::scaled_haar()),
            _ => Err(Error::UnknownName(name.to_string())),
        }
    }

    pub const NAMES: &'static [&'static str] = &["haar", "linear-bspline", "lazy", "scaled-haar"];

    /// Index range `[first, last]` of the non-zero low-pass taps.
    pub fn h1_range(&self) -> (i64, i64) {
        (self.offset, self.offset + self.h1.len() as i64 - 1)
    }

    pub fn h1_at(&self, k: i64) -> f64 {
        let i = k - self.offset;
        if i >= 0 && (i as usize) < self.h1.len() {
            self.h1[i as usize]
        } else {
            0.0
        }
    }

    /// Index range of the high-pass taps.
    pub fn h2_range(&self) -> (i64, i64) {
        let (a, b) = self.h1_range();
        (1 - b, 1 - a)
    }

    pub fn h2_at(&self, k: i64) -> f64 {
        let sign = if k.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        sign * self.h1_at(1 - k)
    }

    /// `d`-th derivative of `L(ω)`.
    pub fn lowpass_derivative(&self, d: u32, omega: f64) -> Complex64 {
        let (a, b) = self.h1_range();
        let mut acc = Complex64::new(0.0, 0.0);
        for k in a..=b {
            let factor = Complex64::new(0.0, -(k as f64)).powu(d);
            acc += factor * Complex64::from_polar(self.h1_at(k), -(k as f64) * omega);
        }
        acc * 0.5
    }

    pub fn lowpass(&self, omega: f64) -> Complex64 {
        self.lowpass_derivative(0, omega)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QmfReport {
    pub name: String,
    /// `|Σ h1 - 2|`
    pub normality_defect: f64,
    /// `max_ω ||L(ω)|² + |L(ω + π)|² - 1|` over the sampled frequencies
    pub orthogonality_defect: f64,
    pub orthogonality_samples: usize,
    /// Largest `I` with `L^(d)(π) = 0` for all `d < I`.
    pub smoothness_order: usize,
}

pub const QMF_SAMPLES: usize = 256;
const SMOOTHNESS_CAP: usize = 32;

pub fn qmf_checks(f: &FilterPair) -> QmfReport {
    let sum: f64 = f.h1.iter().sum();
    let orthogonality_defect = (0..QMF_SAMPLES)
        .map(|i| {
            let w = 2.0 * PI * i as f64 / QMF_SAMPLES as f64;
            (f.lowpass(w).norm_sqr() + f.lowpass(w + PI).norm_sqr() - 1.0).abs()
        })
        .fold(0.0, f64::max);
    let l1: f64 = f.h1.iter().map(|v| v.abs()).sum();
    let (a, b) = f.h1_range();
    let kmax = a.abs().max(b.abs()).max(1) as f64;
    let smoothness_order = (0..SMOOTHNESS_CAP)
        .find(|&d| {
            // |L^(d)| <= ½ Σ|h1| kmax^d: compare relative to that scale
            let scale = 0.5 * l1 * kmax.powi(d as i32);
            f.lowpass_derivative(d as u32, PI).norm() > 1e-10 * scale.max(1.0)
        })
        .unwrap_or(SMOOTHNESS_CAP);
    QmfReport {
        name: f.name.clone(),
        normality_defect: (sum - 2.0).abs(),
        orthogonality_defect,
        orthogonality_samples: QMF_SAMPLES,
        smoothness_order,
    }
}

/// One analysis step with zero extension; both outputs have `ceil(n/2)` entries.
pub fn dwt_step(c: &[f64], f: &FilterPair) -> (Vec<f64>, Vec<f64>) {
    let n = c.len() as i64;
    let out = c.len().div_ceil(2);
    let at = |i: i64| if i >= 0 && i < n { c[i as usize] } else { 0.0 };
    let (a1, b1) = f.h1_range();
    let (a2, b2) = f.h2_range();
    let mut approx = Vec::with_capacity(out);
    let mut detail = Vec::with_capacity(out);
    for r in 0..out as i64 {
        approx.push(0.5 * (a1..=b1).map(|k| f.h1_at(k) * at(2 * r + k)).sum::<f64>());
        detail.push(0.5 * (a2..=b2).map(|k| f.h2_at(k) * at(2 * r + k)).sum::<f64>());
    }
    (approx, detail)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DwtCoeffs {
    pub top_level: i32,
    /// `c_j` for `j = top_level - levels ..= top_level` (the top entry is the input).
    pub approx: BTreeMap<i32, Vec<f64>>,
    /// `b_j` for `j = top_level - levels ..= top_level - 1`.
    pub detail: BTreeMap<i32, Vec<f64>>,
}

pub fn max_levels(len: usize) -> usize {
    if len == 0 {
        0
    } else {
        len.ilog2() as usize + 1
    }
}

pub fn dwt(samples: &[f64], f: &FilterPair, top_level: i32, levels: usize) -> Result<DwtCoeffs> {
    if samples.is_empty() {
        return Err(Error::InvalidInput("dwt needs at least one sample".into()));
    }
    if levels == 0 {
        return Err(Error::InvalidInput("levels must be positive".into()));
    }
    let max = max_levels(samples.len());
    if levels > max {
        return Err(Error::TooManyLevels { requested: levels, max });
    }
    let mut approx = BTreeMap::new();
    let mut detail = BTreeMap::new();
    let mut c = samples.to_vec();
    approx.insert(top_level, c.clone());
    for s in 1..=levels as i32 {
        let (ca, cb) = dwt_step(&c, f);
        approx.insert(top_level - s, ca.clone());
        detail.insert(top_level - s, cb);
        c = ca;
    }
    Ok(DwtCoeffs { top_level, approx, detail })
}

/// Prefilter taps `p[ϱ] = 2^{-J/2} ∫ κ(t) κ(t - ϱ) dt`, returned with the
/// index of the first tap.
pub fn prefilter_taps(kappa: &PiecewisePolyKernel, level: i32) -> (i64, Vec<f64>) {
    let (a, b) = kappa.support();
    let reach = ((b - a).ceil() as i64 - 1).max(0);
    let scale = 2f64.powf(-f64::from(level) / 2.0);
    let taps = (-reach..=reach).map(|r| scale * kappa.inner_product_shifted(kappa, r as f64)).collect();
    (-reach, taps)
}

/// `t'[n] = ½ Σ_s t[s] p[n - s]`, same length as the input.
pub fn prefilter(samples: &[f64], kappa: &PiecewisePolyKernel, level: i32) -> Vec<f64> {
    let (first, taps) = prefilter_taps(kappa, level);
    let n = samples.len() as i64;
    (0..n)
        .map(|i| {
            let s: f64 = taps
                .iter()
                .enumerate()
                .filter_map(|(k, p)| {
                    let src = i - (first + k as i64);
                    (src >= 0 && src < n).then(|| samples[src as usize] * p)
                })
                .sum();
            0.5 * s
        })
        .collect()
}

/// Coefficients `c_{j,ϱ} = 2^{j/2} ∫ h(t) χ(2^j t - ϱ) dt`, with `h` taken as 0
/// outside its domain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Projection {
    pub level: i32,
    pub first_index: i64,
    pub coeffs: Vec<f64>,
}

impl Projection {
    /// Coefficient for translate `ϱ`; 0 outside the stored range.
    pub fn get(&self, r: i64) -> f64 {
        let i = r - self.first_index;
        if i >= 0 && (i as usize) < self.coeffs.len() {
            self.coeffs[i as usize]
        } else {
            0.0
        }
    }

    /// `Σ_ϱ c_ϱ 2^{j/2} χ(2^j t - ϱ)`.
    pub fn synthesize(&self, chi: &PiecewisePolyKernel, t: f64) -> f64 {
        let scale = 2f64.powi(self.level);
        let norm = scale.sqrt();
        let x = scale * t;
        let (a, b) = chi.support();
        let first = (x - b).floor() as i64 + 1;
        let last = (x - a).floor() as i64;
        (first..=last).map(|r| self.get(r) * norm * chi.evaluate(x - r as f64)).sum()
    }
}

/// Single inner product `2^{j/2} ∫ h(t) χ(2^j t - ϱ) dt` over `h`'s domain.
pub fn project_one(h: &Signal, level: i32, chi: &PiecewisePolyKernel, r: i64, spec: &IntegrationSpec) -> Result<f64> {
    let scale = 2f64.powi(level);
    // t = (y + ϱ)/2^j, dt = dy / 2^j
    let v = h.integrate_against(chi, 1.0 / scale, r as f64 / scale, true, spec)?;
    Ok(v / scale.sqrt())
}

/// All translates whose support meets the open domain.
pub fn project(
    h: &Signal,
    level: i32,
    chi: &PiecewisePolyKernel,
    spec: &IntegrationSpec,
    exec: Execution,
) -> Result<Projection> {
    let scale = 2f64.powi(level);
    let (lo, hi) = h.domain();
    let (a, b) = chi.support();
    let first = (scale * lo - b).floor() as i64 + 1;
    let last = (scale * hi - a).ceil() as i64 - 1;
    let count = (last - first + 1).max(0) as usize;
    let coeffs = try_map_indices(count, exec, |i| project_one(h, level, chi, first + i as i64, spec))?;
    Ok(Projection { level, first_index: first, coeffs })
}

/// `∫ h(x) Υ((x - a2)/a1) dx / √|a1|` over `h`'s domain (real wavelets).
pub fn cwt(h: &Signal, wavelet: &PiecewisePolyKernel, a1: f64, a2: f64, spec: &IntegrationSpec) -> Result<f64> {
    if a1 == 0.0 || !a1.is_finite() {
        return Err(Error::InvalidInput("scale a1 must be finite and non-zero".into()));
    }
    // x = a1 y + a2, dx = |a1| dy
    let v = h.integrate_against(wavelet, a1, a2, true, spec)?;
    Ok(v * a1.abs().sqrt())
}

/// How the finest-level sequence is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InitialSequence {
    /// Exact inner products from [`project`].
    Projection,
    /// `2^{-J/2} h(ϱ / 2^J)`.
    Samples,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelDefect {
    pub level: i32,
    pub compared: usize,
    pub max_defect: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CwtDwtReport {
    pub top_level: i32,
    pub initial: InitialSequence,
    pub max_defect: f64,
    pub compared: usize,
    pub per_level: Vec<LevelDefect>,
}

/// Compares Mallat-recursion details `b_{j,ϱ}` with direct transforms at
/// `a1 = 2^{-j}`, `a2 = ϱ 2^{-j}`. In the `½` convention
/// `b_{j,ϱ} = 2^{(j - J)/2} · cwt(2^{-j}, ϱ 2^{-j})`.
/// Only translates whose wavelet support lies inside the domain are compared.
#[allow(clippy::too_many_arguments)]
pub fn dyadic_cwt_equals_dwt(
    h: &Signal,
    f: &FilterPair,
    chi: &PiecewisePolyKernel,
    wavelet: &PiecewisePolyKernel,
    top_level: i32,
    levels: usize,
    initial: InitialSequence,
    spec: &IntegrationSpec,
    exec: Execution,
) -> Result<CwtDwtReport> {
    let (lo, hi) = h.domain();
    if lo < 0.0 {
        return Err(Error::InvalidInput("domain must start at or after 0 (coefficients are indexed from ϱ = 0)".into()));
    }
    let scale = 2f64.powi(top_level);
    let n = (scale * hi).ceil() as usize;
    let fine = match initial {
        InitialSequence::Projection => try_map_indices(n, exec, |r| project_one(h, top_level, chi, r as i64, spec))?,
        InitialSequence::Samples => (0..n).map(|r| h.eval(r as f64 / scale) / scale.sqrt()).collect(),
    };
    let coeffs = dwt(&fine, f, top_level, levels)?;
    let (wa, wb) = wavelet.support();
    let mut per_level = Vec::new();
    for (&level, detail) in coeffs.detail.iter().rev() {
        let s = 2f64.powi(level);
        let interior: Vec<usize> = (0..detail.len())
            .filter(|&r| (r as f64 + wa) / s >= lo && (r as f64 + wb) / s <= hi)
            .collect();
        let factor = 2f64.powf(f64::from(level - top_level) / 2.0);
        let defects = try_map_indices(interior.len(), exec, |i| {
            let r = interior[i];
            let direct = cwt(h, wavelet, 1.0 / s, r as f64 / s, spec)?;
            Ok::<_, Error>((detail[r] - factor * direct).abs())
        })?;
        per_level.push(LevelDefect {
            level,
            compared: defects.len(),
            max_defect: defects.iter().copied().fold(0.0, f64::max),
        });
    }
    Ok(CwtDwtReport {
        top_level,
        initial,
        max_defect: per_level.iter().map(|l| l.max_defect).fold(0.0, f64::max),
        compared: per_level.iter().map(|l| l.compared).sum(),
        per_level,
    })
}

/// `∫ |Υ̂(w)| / |w| dw` over the real line.
///
/// The integrand is even for real wavelets, so twice the half-line integral is
/// taken. An exclusion window `(0, ε)` is shrunk geometrically until its
/// removal changes the value by less than the tolerance, and the upper limit is
/// doubled (in whole multiples of `4π`) with a `1/W` tail extrapolation until
/// successive estimates agree. The tolerance is `max(spec.abs_tol, 1e-7)`.
pub fn admissibility(wavelet: &PiecewisePolyKernel, spec: &IntegrationSpec) -> Result<f64> {
    spec.validate()?;
    let l1 = wavelet.abs_moment(0, spec)?;
    if l1 == 0.0 {
        return Err(Error::DegenerateKernel("zero wavelet".into()));
    }
    let mean = wavelet.mass();
    if mean.abs() > 1e-12 * l1 {
        return Err(Error::Divergent(format!(
            "wavelet mean {mean:e} is non-zero, so |Ŷ(w)|/|w| is not integrable at 0"
        )));
    }
    let tol = spec.abs_tol.max(1e-7);
    let inner = IntegrationSpec { abs_tol: tol / 64.0, ..*spec };
    let g = |w: f64| wavelet.fourier_transform(w).norm() / w;
    let period = 4.0 * PI;

    // core [ε, 4π], shrinking ε
    let mut eps = 1e-2;
    let mut core = numerics::integrate(g, eps, period, &inner)?;
    loop {
        let piece = numerics::integrate(g, eps / 16.0, eps, &inner)?;
        core += piece;
        eps /= 16.0;
        if piece.abs() <= tol / 16.0 || eps < 1e-300 {
            break;
        }
    }

    // tail, doubling the upper limit
    let mut upper = period;
    let mut partial = core;
    let mut previous: Option<f64> = None;
    for _ in 0..20 {
        let next = 2.0 * upper;
        let knots: Vec<f64> = (0..=((next - upper) / period).round() as usize).map(|k| upper + k as f64 * period).collect();
        let chunk = numerics::integrate_knots(g, &knots, &inner)?;
        partial += chunk;
        upper = next;
        // a 1/W tail means the chunk just added equals the remaining tail
        let estimate = partial + chunk;
        if let Some(p) = previous {
            if (estimate - p).abs() <= tol / 2.0 {
                return Ok(2.0 * estimate);
            }
        }
        previous = Some(estimate);
    }
    Err(Error::NonConvergent { iterations: 20, last_change: f64::NAN })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CascadeSpec {
    pub max_iterations: usize,
    /// Stop once the sup change between consecutive iterates is at most this.
    pub tol: f64,
}

impl Default for CascadeSpec {
    fn default() -> Self {
        CascadeSpec { max_iterations: 20, tol: 2e-5 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CascadeResult {
    pub grid: GridSpec,
    pub values: Vec<f64>,
    pub iterations: usize,
    pub last_change: f64,
    /// Cell width of the final piecewise-constant iterate.
    pub resolution: f64,
}

/// Fixed-point iteration of `φ ↦ Σ_k h1_k φ(2t - k)` from the Haar indicator.
///
/// Iterate `n` is piecewise constant on cells of width `2^{-n}` covering
/// `[min(k_first, 0), max(k_last, 1)]`, so every step is an exact refinement
/// on a dyadic array. Iteration stops when the sup change is at most
/// `spec.tol`; the final iterate is sampled on `grid`.
pub fn cascade(f: &FilterPair, spec: &CascadeSpec, grid: &GridSpec) -> Result<CascadeResult> {
    let report = qmf_checks(f);
    if report.normality_defect > 1e-12 {
        return Err(Error::NotNormalized { defect: report.normality_defect });
    }
    if spec.max_iterations == 0 || spec.max_iterations > 26 {
        return Err(Error::InvalidInput("max_iterations must be in 1..=26".into()));
    }
    let (ka, kb) = f.h1_range();
    let left = ka.min(0);
    let right = kb.max(1);
    let width = (right - left) as usize;
    // level 0: unit cells, Haar indicator on [0, 1)
    let mut values = vec![0.0; width];
    values[(-left) as usize] = 1.0;
    let mut last_change = f64::INFINITY;
    let mut iterations = 0;
    for n in 1..=spec.max_iterations {
        let cells = width << n;
        let prev_per_unit = 1i64 << (n - 1);
        let next: Vec<f64> = (0..cells as i64)
            .map(|m| {
                (ka..=kb)
                    .map(|k| {
                        // cell m of the new iterate starts at left + m 2^{-n}; 2t - k lands in
                        // cell (left - k) 2^{n-1} + m of the previous one
                        let src = (left - k) * prev_per_unit + m;
                        if src >= 0 && (src as usize) < values.len() {
                            f.h1_at(k) * values[src as usize]
                        } else {
                            0.0
                        }
                    })
                    .sum()
            })
            .collect();
        last_change = next.iter().enumerate().map(|(m, v)| (v - values[m / 2]).abs()).fold(0.0, f64::max);
        if !last_change.is_finite() {
            return Err(Error::NonConvergent { iterations: n, last_change });
        }
        values = next;
        iterations = n;
        if last_change <= spec.tol {
            break;
        }
    }
    if last_change > spec.tol {
        return Err(Error::NonConvergent { iterations, last_change });
    }
    let per_unit = (1usize << iterations) as f64;
    let samples = grid
        .nodes()
        .into_iter()
        .map(|t| {
            let x = ((t - left as f64) * per_unit).floor();
            if x >= 0.0 && x < values.len() as f64 {
                values[x as usize]
            } else {
                0.0
            }
        })
        .collect();
    Ok(CascadeResult { grid: *grid, values: samples, iterations, last_change, resolution: 1.0 / per_unit })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels;
    use crate::signal;

    #[test]
    fn haar_filter_checks() {
        let r = qmf_checks(&FilterPair::haar());
        assert_eq!(r.normality_defect, 0.0);
        assert!(r.orthogonality_defect <= 1e-12);
        assert_eq!(r.smoothness_order, 1);
    }

    #[test]
    fn lazy_and_scaled_filters() {
        let lazy = qmf_checks(&FilterPair::lazy());
        assert_eq!(lazy.normality_defect, 0.0);
        assert!((lazy.orthogonality_defect - 1.0).abs() < 1e-12);
        let scaled = qmf_checks(&FilterPair::scaled_haar());
        assert!((scaled.normality_defect - 1.0).abs() < 1e-15);
        assert_eq!(qmf_checks(&FilterPair::linear_bspline()).smoothness_order, 2);
    }

    #[test]
    fn highpass_taps() {
        let f = FilterPair::haar();
        assert_eq!(f.h2_range(), (0, 1));
        assert_eq!((f.h2_at(0), f.h2_at(1)), (1.0, -1.0));
    }

    #[test]
    fn step_examples() {
        let f = FilterPair::haar();
        assert_eq!(dwt_step(&[1.0, 1.0, 1.0, 1.0], &f), (vec![1.0, 1.0], vec![0.0, 0.0]));
        assert_eq!(dwt_step(&[1.0, 0.0, 0.0, 0.0], &f), (vec![0.5, 0.0], vec![0.5, 0.0]));
        assert_eq!(dwt_step(&[0.0; 5], &f), (vec![0.0; 3], vec![0.0; 3]));
    }

    #[test]
    fn ramp_details() {
        let ramp: Vec<f64> = (0..16).map(|k| k as f64 / 16.0).collect();
        let d = dwt(&ramp, &FilterPair::haar(), 4, 2).unwrap();
        assert!(d.detail[&3].iter().all(|&b| b == -1.0 / 32.0));
        // level-3 averages are spaced 1/8 apart
        assert!(d.detail[&2].iter().all(|&b| b == -1.0 / 16.0));
        assert_eq!(d.approx[&3][1], 5.0 / 32.0);
        assert_eq!(d.approx[&2][1], 11.0 / 32.0);
    }

    #[test]
    fn level_limit() {
        let x = vec![1.0; 16];
        assert!(dwt(&x, &FilterPair::haar(), 4, 5).is_ok());
        assert_eq!(dwt(&x, &FilterPair::haar(), 4, 6).unwrap_err(), Error::TooManyLevels { requested: 6, max: 5 });
    }

    #[test]
    fn dwt_json_shape() {
        let d = dwt(&[1.0, 2.0, 3.0, 4.0], &FilterPair::haar(), 2, 1).unwrap();
        let v: serde_json::Value = serde_json::to_value(&d).unwrap();
        assert_eq!(v["top_level"], 2);
        assert!(v["approx"]["1"].is_array());
        let back: DwtCoeffs = serde_json::from_value(v).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn haar_prefilter_is_scaling() {
        let (first, taps) = prefilter_taps(&kernels::haar(), 2);
        assert_eq!(first, 0);
        assert_eq!(taps, vec![0.5]);
        assert_eq!(prefilter(&[2.0, -4.0], &kernels::haar(), 2), vec![0.5, -1.0]);
    }

    #[test]
    fn impulse_prefilter_gives_halved_taps() {
        let hat = kernels::bspline(1).unwrap();
        let (first, taps) = prefilter_taps(&hat, 0);
        assert_eq!(first, -1);
        assert!((taps[1] - 2.0 / 3.0).abs() < 1e-15);
        assert!((taps[0] - 1.0 / 6.0).abs() < 1e-15);
        let out = prefilter(&[0.0, 0.0, 1.0, 0.0, 0.0], &hat, 0);
        let expect = [0.0, taps[0] / 2.0, taps[1] / 2.0, taps[2] / 2.0, 0.0];
        for (o, e) in out.iter().zip(expect) {
            assert!((o - e).abs() < 1e-15);
        }
    }

    #[test]
    fn projection_examples() {
        let spec = IntegrationSpec::default();
        let ramp = signal::preset("ramp").unwrap();
        let p = project(&ramp, 1, &kernels::haar(), &spec, Execution::Sequential).unwrap();
        assert_eq!(p.first_index, 0);
        assert!((p.get(0) - 2f64.sqrt() / 8.0).abs() < 1e-12);
        assert_eq!(p.get(40), 0.0);
        assert_eq!(project_one(&ramp, 1, &kernels::haar(), 40, &spec).unwrap(), 0.0);
        let one = project(&Signal::constant(1.0), 0, &kernels::haar(), &spec, Execution::Sequential).unwrap();
        assert_eq!(one.coeffs, vec![1.0]);
    }

    #[test]
    fn cwt_examples() {
        let spec = IntegrationSpec::default();
        let w = kernels::haar_wavelet();
        let own = cwt(&Signal::from_kernel(&w), &w, 1.0, 0.0, &spec).unwrap();
        assert!((own - 1.0).abs() < 1e-12);
        let c = cwt(&Signal::constant(3.0).with_domain((-5.0, 5.0)).unwrap(), &w, 0.25, 0.5, &spec).unwrap();
        assert!(c.abs() < 1e-12);
        assert!(cwt(&Signal::constant(1.0), &w, 0.0, 0.0, &spec).is_err());
    }

    #[test]
    fn haar_admissibility_is_pi() {
        let spec = IntegrationSpec::default();
        let v = admissibility(&kernels::haar_wavelet(), &spec).unwrap();
        assert!((v - PI).abs() < 1e-6, "{v}");
        let doubled = admissibility(&kernels::haar_wavelet().scaled(2.0), &spec).unwrap();
        assert!((doubled - 2.0 * v).abs() < 1e-6);
        assert!(matches!(admissibility(&kernels::haar(), &spec), Err(Error::Divergent(_))));
    }

    #[test]
    fn haar_cascade_is_fixed() {
        let grid = GridSpec::new(0.0, 1.0, 101).unwrap();
        let r = cascade(&FilterPair::haar(), &CascadeSpec::default(), &grid).unwrap();
        assert_eq!(r.iterations, 1);
        assert_eq!(r.last_change, 0.0);
        assert!(r.values[..100].iter().all(|&v| v == 1.0));
        assert_eq!(r.values[100], 0.0);
    }

    #[test]
    fn cascade_rejects_unnormalized() {
        let grid = GridSpec::new(0.0, 1.0, 11).unwrap();
        let zero = FilterPair::new("zero", vec![0.0, 0.0], 0).unwrap();
        assert!(matches!(cascade(&zero, &CascadeSpec::default(), &grid), Err(Error::NotNormalized { .. })));
        let tight = CascadeSpec { max_iterations: 4, tol: 1e-9 };
        assert!(matches!(cascade(&FilterPair::linear_bspline(), &tight, &grid), Err(Error::NonConvergent { .. })));
    }
}
