//! Computable approximation bounds and rate fits.
//!
//! Every bound comes back as a [`BoundReport`] whose `ingredients` hold the
//! intermediate constants, so a reported value can be re-derived by hand.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::ops::RangeInclusive;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernels::PiecewisePolyKernel;
use crate::numerics::{self, GridSpec, IntegrationSpec};
use crate::parallel::{try_map_indices, Execution};

/// Grid size for sup-norms and moduli that are not supplied analytically.
pub const DENSE_POINTS: usize = 8192;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub name: String,
    pub value: f64,
    pub ingredients: BTreeMap<String, f64>,
    pub level: i32,
    pub tolerance_used: f64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl BoundReport {
    fn new(name: &str, value: f64, level: i32, tolerance_used: f64) -> Self {
        BoundReport {
            name: name.to_string(),
            value,
            ingredients: BTreeMap::new(),
            level,
            tolerance_used,
            warnings: Vec::new(),
        }
    }

    fn with(mut self, key: &str, v: f64) -> Self {
        self.ingredients.insert(key.to_string(), v);
        self
    }

    pub fn ingredient(&self, key: &str) -> Option<f64> {
        self.ingredients.get(key).copied()
    }

    fn check(self) -> Result<Self> {
        if !(self.value >= 0.0 && self.value.is_finite()) {
            return Err(Error::InvalidInput(format!("{}: bound evaluated to {}", self.name, self.value)));
        }
        if let Some((k, v)) = self.ingredients.iter().find(|(_, v)| !v.is_finite()) {
            return Err(Error::InvalidInput(format!("{}: ingredient {k} is {v}", self.name)));
        }
        Ok(self)
    }
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// Two-term modulus bound with one level parameter `j` in every exponent:
///
/// ```text
/// Σ_{i=1}^{N} |h^(i)|/i! · a^i/2^{ij}  +  a^N/2^{Nj} · ω(h^(N), a/2^j)
/// ```
///
/// `derivative_sups[i - 1]` bounds `|h^(i)|`; `mod_cont` is the modulus of
/// `h^(N)` at `a/2^j`.
pub fn theorem31_bound(derivative_sups: &[f64], a: f64, j: i32, n: usize, mod_cont: f64) -> Result<BoundReport> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::InvalidInput(format!("a must be positive, got {a}")));
    }
    if n == 0 || derivative_sups.len() < n {
        return Err(Error::InvalidInput(format!(
            "need N >= 1 derivative bounds, got N = {n} with {} supplied",
            derivative_sups.len()
        )));
    }
    if derivative_sups[..n].iter().chain([&mod_cont]).any(|v| !(*v >= 0.0)) {
        return Err(Error::InvalidInput("derivative bounds and modulus must be non-negative".into()));
    }
    let step = a / 2f64.powi(j);
    let taylor: f64 = (1..=n).map(|i| derivative_sups[i - 1] / factorial(i) * step.powi(i as i32)).sum();
    let remainder = step.powi(n as i32) * mod_cont;
    let mut r = BoundReport::new("theorem31", taylor + remainder, j, 0.0)
        .with("a", a)
        .with("N", n as f64)
        .with("taylor_term", taylor)
        .with("modulus_term", remainder)
        .with("modulus", mod_cont)
        .with("delta", step);
    for (i, s) in derivative_sups[..n].iter().enumerate() {
        r = r.with(&format!("sup_h{}", i + 1), *s);
    }
    r.check()
}

/// [`theorem31_bound`] with every ingredient measured on an 8192-point grid
/// over `domain`: `derivatives[i]` is `h^(i+1)`.
pub fn theorem31_bound_dense(
    derivatives: &[&(dyn Fn(f64) -> f64 + Sync)],
    domain: (f64, f64),
    a: f64,
    j: i32,
) -> Result<BoundReport> {
    let n = derivatives.len();
    if n == 0 {
        return Err(Error::InvalidInput("at least one derivative is required".into()));
    }
    let grid = GridSpec::new(domain.0, domain.1, DENSE_POINTS)?;
    let sups = derivatives.iter().map(|d| numerics::sup_norm(d, &grid)).collect::<Result<Vec<_>>>()?;
    let modulus = numerics::modulus_of_continuity(derivatives[n - 1], a / 2f64.powi(j), &grid)?;
    let mut r = theorem31_bound(&sups, a, j, n, modulus)?;
    r.ingredients.insert("grid_points".into(), DENSE_POINTS as f64);
    Ok(r)
}

/// `C · 2^{-jm}` with `C = K·C1·C2/m!`, `C1 = ∫|u|^m |χ2(u)| du`,
/// `C2 = Σ_ϱ |κ1(2^j t - ϱ)|`.
pub fn vanishing_moment_bound(
    sup_hm: f64,
    chi2: &PiecewisePolyKernel,
    kappa1: &PiecewisePolyKernel,
    m: usize,
    j: i32,
    t: f64,
    spec: &IntegrationSpec,
) -> Result<BoundReport> {
    if m == 0 {
        return Err(Error::InvalidInput("m must be positive".into()));
    }
    if !(sup_hm >= 0.0) {
        return Err(Error::InvalidInput("K must be non-negative".into()));
    }
    let found = chi2.vanishing_moments(1e-12);
    if found < m {
        return Err(Error::InsufficientMoments { required: m, found });
    }
    let c1 = chi2.abs_moment(m, spec)?;
    let x = 2f64.powi(j) * t;
    let (a, b) = kappa1.support();
    let c2: f64 = (((x - b).floor() as i64 + 1)..=((x - a).floor() as i64))
        .map(|r| kappa1.evaluate(x - r as f64).abs())
        .sum();
    let c = sup_hm * c1 * c2 / factorial(m);
    let value = c * 2f64.powi(-j * m as i32);
    BoundReport::new("vanishing-moment", value, j, spec.abs_tol)
        .with("K", sup_hm)
        .with("C1", c1)
        .with("C2", c2)
        .with("C", c)
        .with("m", m as f64)
        .with("t", t)
        .check()
}

/// Which integrand resolves the ambiguous `|1 - χ̃(ω…)|²` factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum B1Reading {
    /// `|1 - χ̃(ω)|²`
    Linear,
    /// `|1 - χ̃(ω)²|²`
    Squared,
}

impl B1Reading {
    pub const ALL: [B1Reading; 2] = [B1Reading::Linear, B1Reading::Squared];

    fn weight(self, chi: Complex64) -> f64 {
        match self {
            B1Reading::Linear => (Complex64::from(1.0) - chi).norm_sqr(),
            B1Reading::Squared => (Complex64::from(1.0) - chi * chi).norm_sqr(),
        }
    }
}

/// `√(2^{J-1}/π) · (∫_{-π}^{π} |f̂(-2^J ω)|² Φ(ω) dω)^{1/2}`, with `Φ` chosen by `reading`.
pub fn b1<F, C>(f_hat: F, chi_tilde: C, level: i32, reading: B1Reading, spec: &IntegrationSpec) -> Result<f64>
where
    F: Fn(f64) -> Complex64,
    C: Fn(f64) -> Complex64,
{
    let s = 2f64.powi(level);
    let integral = numerics::integrate_with_breaks(
        |w| f_hat(-s * w).norm_sqr() * reading.weight(chi_tilde(w)),
        -PI,
        PI,
        &[0.0],
        spec,
    )?;
    Ok((s / 2.0 / PI).sqrt() * integral.max(0.0).sqrt())
}

/// B3 has the same functional form as B1, applied to the operator's transform.
pub fn b3<F, C>(w_hat: F, chi_tilde: C, level: i32, reading: B1Reading, spec: &IntegrationSpec) -> Result<f64>
where
    F: Fn(f64) -> Complex64,
    C: Fn(f64) -> Complex64,
{
    b1(w_hat, chi_tilde, level, reading, spec)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lower: f64,
    pub upper: f64,
    /// `true` when `b1 - s` was negative and the lower end was clamped to 0.
    pub clamped: bool,
}

impl Interval {
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }
}

/// Half-width `2δ/√(2π)` around `B1`.
pub fn prop2_halfwidth(delta: f64) -> f64 {
    2.0 * delta / (2.0 * PI).sqrt()
}

pub fn prop2_interval(b1_value: f64, delta: f64) -> Result<Interval> {
    if !(b1_value >= 0.0) || !(delta >= 0.0) {
        return Err(Error::InvalidInput("B1 and δ must be non-negative".into()));
    }
    let s = prop2_halfwidth(delta);
    let lower = b1_value - s;
    Ok(Interval { lower: lower.max(0.0), upper: b1_value + s, clamped: lower < 0.0 })
}

pub fn prop3_total(b1_value: f64, b3_value: f64) -> Result<f64> {
    if !(b1_value >= 0.0 && b3_value >= 0.0) {
        return Err(Error::InvalidInput("B1 and B3 must be non-negative".into()));
    }
    Ok(b1_value.hypot(b3_value))
}

/// Share of the coefficient sum above which the boundary `k` triggers a warning.
pub const TRUNCATION_WARN_SHARE: f64 = 0.01;

/// ```text
/// B2 = 2^{J/2}/(2π) · (Σ_k |∫_window (1 - χ̃1(ω)) f̂(-2^J ω) e^{-ikω} dω|²)^{1/2}
/// ```
///
/// The ingredients carry the Parseval form `2^{J/2}/(2π)·(2π ∫_window |g|²)^{1/2}`,
/// which equals B2 for the full `k` sum over a `2π`-wide window, and the share
/// of the boundary terms.
pub fn b2<F, C>(
    f_hat: F,
    chi1_tilde: C,
    level: i32,
    k_range: RangeInclusive<i64>,
    window: (f64, f64),
    spec: &IntegrationSpec,
    exec: Execution,
) -> Result<BoundReport>
where
    F: Fn(f64) -> Complex64 + Sync,
    C: Fn(f64) -> Complex64 + Sync,
{
    if k_range.is_empty() {
        return Err(Error::InvalidInput("k range is empty".into()));
    }
    if !(window.0 < window.1) {
        return Err(Error::InvalidInput("ω window must be non-empty".into()));
    }
    let s = 2f64.powi(level);
    let g = |w: f64| (Complex64::from(1.0) - chi1_tilde(w)) * f_hat(-s * w);
    let (k0, k1) = (*k_range.start(), *k_range.end());
    let count = (k1 - k0 + 1) as usize;
    let breaks = window_breaks(window);
    let terms = try_map_indices(count, exec, |i| {
        let k = (k0 + i as i64) as f64;
        numerics::integrate_complex(|w| g(w) * Complex64::from_polar(1.0, -k * w), window.0, window.1, &breaks, spec)
            .map(|c| c.norm_sqr())
    })?;
    let sum: f64 = terms.iter().sum();
    let prefactor = s.sqrt() / (2.0 * PI);
    let energy = numerics::integrate_with_breaks(|w| g(w).norm_sqr(), window.0, window.1, &breaks, spec)?;
    let boundary = terms[0].max(terms[count - 1]);
    let share = if sum > 0.0 { boundary / sum } else { 0.0 };
    let mut r = BoundReport::new("B2", prefactor * sum.sqrt(), level, spec.abs_tol)
        .with("prefactor", prefactor)
        .with("coefficient_sum", sum)
        .with("parseval_value", prefactor * (2.0 * PI * energy).sqrt())
        .with("boundary_share", share)
        .with("k_min", k0 as f64)
        .with("k_max", k1 as f64);
    if share > TRUNCATION_WARN_SHARE {
        r.warnings.push(format!(
            "truncation: boundary k contributes {:.3}% of the coefficient sum",
            100.0 * share
        ));
    }
    r.check()
}

/// Breakpoints every `π` inside the window, to keep oscillatory panels short.
fn window_breaks(window: (f64, f64)) -> Vec<f64> {
    let first = (window.0 / PI).floor() as i64 + 1;
    let last = (window.1 / PI).ceil() as i64 - 1;
    (first..=last).map(|k| k as f64 * PI).collect()
}

/// Coefficient gap `(2^{J/2}/2π) ∫_window f̂(-2^J ω)(χ̃(ω) - 1) e^{-iϱω} dω`.
///
/// Exact over the whole line; `window` truncates. The second value is the
/// integrand magnitude at the window edges, a cheap tail indicator.
pub fn lemma1_gap<F, C>(
    f_hat: F,
    chi_tilde: C,
    level: i32,
    rho: i64,
    window: (f64, f64),
    spec: &IntegrationSpec,
) -> Result<(Complex64, f64)>
where
    F: Fn(f64) -> Complex64,
    C: Fn(f64) -> Complex64,
{
    if !(window.0 < window.1) {
        return Err(Error::InvalidInput("ω window must be non-empty".into()));
    }
    let s = 2f64.powi(level);
    let r = rho as f64;
    let g = |w: f64| f_hat(-s * w) * (chi_tilde(w) - 1.0) * Complex64::from_polar(1.0, -r * w);
    let integral = numerics::integrate_complex(g, window.0, window.1, &window_breaks(window), spec)?;
    let edge = g(window.0).norm().max(g(window.1).norm());
    Ok((integral * (s.sqrt() / (2.0 * PI)), edge))
}

/// Default `ω` window for [`lemma1_gap`].
pub const LEMMA1_WINDOW: (f64, f64) = (-8.0 * PI, 8.0 * PI);

/// `−slope` of the least-squares line through `(j, log2 e_j)`.
pub fn empirical_rate(levels: &[i32], sup_errors: &[f64]) -> Result<f64> {
    if levels.len() != sup_errors.len() {
        return Err(Error::InvalidInput("levels and errors differ in length".into()));
    }
    if levels.len() < 3 {
        return Err(Error::InvalidInput("a rate fit needs at least 3 levels".into()));
    }
    if let Some(e) = sup_errors.iter().find(|e| !(**e > 0.0 && e.is_finite())) {
        return Err(Error::InvalidInput(format!("errors must be positive and finite, got {e}")));
    }
    let n = levels.len() as f64;
    let xs: Vec<f64> = levels.iter().map(|&j| f64::from(j)).collect();
    let ys: Vec<f64> = sup_errors.iter().map(|e| e.log2()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::DegenerateFit);
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    Ok(-sxy / sxx)
}

/// Membership test for the class of signals whose scaled spectrum outside
/// `[-π, π]` has small energy: returns `(‖f̂(2^J ·)‖_{L²(π ≤ |ω| ≤ W)} ≤ δ, norm)`.
pub fn in_u_class<F>(f_hat: F, level: i32, delta: f64, window: f64, spec: &IntegrationSpec) -> Result<(bool, f64)>
where
    F: Fn(f64) -> Complex64,
{
    if !(window > PI) {
        return Err(Error::InvalidInput("window must exceed π".into()));
    }
    let s = 2f64.powi(level);
    let breaks = window_breaks((PI, window));
    let e = |w: f64| f_hat(s * w).norm_sqr() + f_hat(-s * w).norm_sqr();
    let energy = numerics::integrate_with_breaks(e, PI, window, &breaks, spec)?;
    let norm = energy.max(0.0).sqrt();
    Ok((norm <= delta, norm))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels;

    fn one(_: f64) -> Complex64 {
        Complex64::new(1.0, 0.0)
    }

    fn zero(_: f64) -> Complex64 {
        Complex64::new(0.0, 0.0)
    }

    fn sinc4(w: f64) -> Complex64 {
        Complex64::from(kernels::bspline_fourier_centered(3, w))
    }

    #[test]
    fn theorem31_trivial_cases() {
        let r = theorem31_bound(&[0.0], 1.0, 4, 1, 0.0).unwrap();
        assert_eq!(r.value, 0.0);
        let small = theorem31_bound(&[2.0 * PI], 1.0, 2, 1, 1.0).unwrap().value;
        let big = theorem31_bound(&[2.0 * PI], 2.0, 2, 1, 1.0).unwrap().value;
        assert!(big > small);
        assert!(theorem31_bound(&[1.0], 0.0, 2, 1, 0.0).is_err());
        assert!(theorem31_bound(&[], 1.0, 2, 1, 0.0).is_err());
    }

    #[test]
    fn vanishing_moment_examples() {
        let spec = IntegrationSpec::default();
        let w = kernels::haar_wavelet();
        let h = kernels::haar();
        let r = vanishing_moment_bound(2.0 * PI, &w, &h, 1, 4, 0.5, &spec).unwrap();
        assert!((r.ingredient("C1").unwrap() - 0.5).abs() < 1e-12);
        assert_eq!(r.ingredient("C2"), Some(1.0));
        assert!((r.value - PI / 16.0).abs() < 1e-12);
        let next = vanishing_moment_bound(2.0 * PI, &w, &h, 1, 5, 0.5, &spec).unwrap();
        assert_eq!(next.value, r.value / 2.0);
        assert_eq!(
            vanishing_moment_bound(1.0, &w, &h, 2, 4, 0.5, &spec).unwrap_err(),
            Error::InsufficientMoments { required: 2, found: 1 }
        );
    }

    #[test]
    fn b1_trivial_and_homogeneous() {
        let spec = IntegrationSpec::with_tol(1e-14);
        for reading in B1Reading::ALL {
            assert_eq!(b1(sinc4, one, 2, reading, &spec).unwrap(), 0.0);
            assert_eq!(b1(zero, sinc4, 2, reading, &spec).unwrap(), 0.0);
            let base = b1(sinc4, sinc4, 2, reading, &spec).unwrap();
            let scaled = b1(|w| sinc4(w) * 3.0, sinc4, 2, reading, &spec).unwrap();
            assert!((scaled - 3.0 * base).abs() < 1e-10);
        }
    }

    #[test]
    fn interval_arithmetic() {
        assert_eq!(prop2_halfwidth(0.01), 0.02 / (2.0 * PI).sqrt());
        let i = prop2_interval(0.5, 0.0).unwrap();
        assert_eq!((i.lower, i.upper, i.clamped), (0.5, 0.5, false));
        let c = prop2_interval(0.001, 0.01).unwrap();
        assert!(c.clamped && c.lower == 0.0);
        assert_eq!(prop3_total(3.0, 4.0).unwrap(), 5.0);
        assert_eq!(prop3_total(0.0, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn b2_trivial_and_parseval() {
        let spec = IntegrationSpec::default();
        let w = (-PI, PI);
        assert_eq!(b2(sinc4, one, 2, -4..=4, w, &spec, Execution::Sequential).unwrap().value, 0.0);
        assert_eq!(b2(zero, sinc4, 2, -4..=4, w, &spec, Execution::Sequential).unwrap().value, 0.0);
        let r = b2(sinc4, sinc4, 2, -64..=64, w, &spec, Execution::Parallel).unwrap();
        let parseval = r.ingredient("parseval_value").unwrap();
        assert!((r.value - parseval).abs() < 1e-6, "{} vs {parseval}", r.value);
        assert!(r.warnings.is_empty());
        let short = b2(sinc4, sinc4, 2, 0..=0, w, &spec, Execution::Sequential).unwrap();
        assert!(!short.warnings.is_empty());
    }

    #[test]
    fn lemma1_trivial() {
        let spec = IntegrationSpec::default();
        let (g, _) = lemma1_gap(sinc4, one, 2, 3, LEMMA1_WINDOW, &spec).unwrap();
        assert_eq!(g, Complex64::new(0.0, 0.0));
        // spectrum inside [-π, π] after scaling, χ̃ = 1 there
        let band = |w: f64| if w.abs() <= 4.0 * PI { Complex64::from((w / 8.0).cos()) } else { Complex64::from(0.0) };
        let flat = |w: f64| if w.abs() <= PI { Complex64::from(1.0) } else { Complex64::from(0.5) };
        let (g, _) = lemma1_gap(band, flat, 2, 1, LEMMA1_WINDOW, &spec).unwrap();
        assert!(g.norm() < 1e-10);
    }

    #[test]
    fn rate_fits() {
        let levels = [2, 3, 4, 5, 6];
        let first: Vec<f64> = levels.iter().map(|&j| 3.0 * 2f64.powi(-j)).collect();
        assert!((empirical_rate(&levels, &first).unwrap() - 1.0).abs() < 1e-10);
        let second: Vec<f64> = levels.iter().map(|&j| 0.7 * 2f64.powi(-2 * j)).collect();
        assert!((empirical_rate(&levels, &second).unwrap() - 2.0).abs() < 1e-10);
        assert_eq!(empirical_rate(&[3, 3, 3], &[1.0, 2.0, 3.0]).unwrap_err(), Error::DegenerateFit);
        assert!(empirical_rate(&[1, 2], &[1.0, 0.5]).is_err());
        assert!(empirical_rate(&[1, 2, 3], &[1.0, 0.0, 0.5]).is_err());
    }

    #[test]
    fn u_class() {
        let spec = IntegrationSpec::default();
        let band = |w: f64| if w.abs() <= 2.0 * PI { Complex64::from(1.0) } else { Complex64::from(0.0) };
        let (inside, norm) = in_u_class(band, 1, 1e-12, 16.0 * PI, &spec).unwrap();
        assert!(inside);
        assert_eq!(norm, 0.0);
        let (inside, norm) = in_u_class(sinc4, 0, 1e-6, 64.0 * PI, &spec).unwrap();
        assert!(!inside && norm > 0.0);
    }
}
