//! Deterministic scalar quadrature, Lp norms, grids and the modulus of
//! continuity.
//!
//! Integration is globally adaptive: the interval is seeded with the caller's
//! breakpoints, and the panel with the largest error estimate is bisected until
//! the summed estimate drops below `abs_tol`. Integrands with known kinks or
//! jumps (kernel knots, sample cells) should pass those as breakpoints.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, VecDeque};
use std::ops::{Add, Mul, Sub};
use std::sync::OnceLock;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuadratureRule {
    AdaptiveSimpson,
    GaussLegendreComposite,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegrationSpec {
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    pub rule: QuadratureRule,
}

impl Default for IntegrationSpec {
    fn default() -> Self {
        IntegrationSpec {
            abs_tol: 1e-10,
            max_subdivisions: 1 << 20,
            rule: QuadratureRule::AdaptiveSimpson,
        }
    }
}

impl IntegrationSpec {
    pub fn with_tol(abs_tol: f64) -> Self {
        IntegrationSpec { abs_tol, ..Default::default() }
    }

    pub fn gauss_legendre(abs_tol: f64) -> Self {
        IntegrationSpec { abs_tol, rule: QuadratureRule::GaussLegendreComposite, ..Default::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0) {
            return Err(Error::InvalidInput(format!("abs_tol must be > 0, got {}", self.abs_tol)));
        }
        if self.max_subdivisions < 1 {
            return Err(Error::InvalidInput("max_subdivisions must be >= 1".into()));
        }
        Ok(())
    }
}

/// Uniform grid `lo, lo + h, ..., hi` with `points` nodes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
}

impl GridSpec {
    pub fn new(lo: f64, hi: f64, points: usize) -> Result<Self> {
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::InvalidInput(format!("grid needs lo < hi, got [{lo}, {hi}]")));
        }
        if points < 2 {
            return Err(Error::InvalidInput("grid needs at least 2 points".into()));
        }
        Ok(GridSpec { lo, hi, points })
    }

    pub fn spacing(&self) -> f64 {
        (self.hi - self.lo) / (self.points - 1) as f64
    }

    /// The `i`-th node. Endpoints are hit exactly.
    pub fn point(&self, i: usize) -> f64 {
        if i + 1 == self.points {
            self.hi
        } else {
            self.lo + (self.hi - self.lo) * (i as f64) / ((self.points - 1) as f64)
        }
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.points).map(|i| self.point(i)).collect()
    }
}

/// Values that the adaptive driver can accumulate.
pub trait QuadValue: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn magnitude(self) -> f64;
    fn is_finite_value(self) -> bool;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(self) -> f64 {
        self.abs()
    }
    fn is_finite_value(self) -> bool {
        self.is_finite()
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(self) -> f64 {
        self.norm()
    }
    fn is_finite_value(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

/// Nodes and weights of the n-point Gauss–Legendre rule on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

pub fn gauss_legendre(n: usize) -> GaussRule {
    assert!(n >= 1, "Gauss-Legendre rule needs n >= 1");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, p_prev) = legendre_pair(n, x);
            dp = nf * (x * p - p_prev) / (x * x - 1.0);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (p, p_prev) = legendre_pair(n, x);
        dp = if (x * x - 1.0).abs() > 0.0 { nf * (x * p - p_prev) / (x * x - 1.0) } else { dp };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    GaussRule { nodes, weights }
}

// (P_n(x), P_{n-1}(x))
fn legendre_pair(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    (p1, p0)
}

const PANEL_ORDER: usize = 10;

fn panel_rule() -> &'static GaussRule {
    static RULE: OnceLock<GaussRule> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(PANEL_ORDER))
}

/// Applies a Gauss rule on `[a, b]`.
pub fn gauss_panel<V: QuadValue, F: Fn(f64) -> V>(rule: &GaussRule, f: &F, a: f64, b: f64) -> Result<V> {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut acc = V::zero();
    for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
        let t = mid + half * x;
        let v = f(t);
        if !v.is_finite_value() {
            return Err(Error::NonFinite { at: t });
        }
        acc = acc + v * w;
    }
    Ok(acc * half)
}

#[derive(Clone, Copy)]
struct Panel<V> {
    a: f64,
    b: f64,
    value: V,
    err: f64,
    // f at a, a+h/4, a+h/2, a+3h/4, b (Simpson only)
    fv: [V; 5],
}

struct HeapEntry {
    err: f64,
    idx: usize,
}

impl PartialEq for HeapEntry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for HeapEntry {}
impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err).then_with(|| other.idx.cmp(&self.idx))
    }
}

fn eval_checked<V: QuadValue, F: Fn(f64) -> V>(f: &F, t: f64) -> Result<V> {
    let v = f(t);
    if v.is_finite_value() {
        Ok(v)
    } else {
        Err(Error::NonFinite { at: t })
    }
}

fn simpson_panel<V: QuadValue>(a: f64, b: f64, fv: [V; 5]) -> Panel<V> {
    let h = b - a;
    let s1 = (fv[0] + fv[2] * 4.0 + fv[4]) * (h / 6.0);
    let s2 = (fv[0] + fv[1] * 4.0 + fv[2] * 2.0 + fv[3] * 4.0 + fv[4]) * (h / 12.0);
    let diff = s2 - s1;
    Panel { a, b, value: s2 + diff * (1.0 / 15.0), err: diff.magnitude() / 15.0, fv }
}

fn new_panel<V: QuadValue, F: Fn(f64) -> V>(f: &F, a: f64, b: f64, rule: QuadratureRule) -> Result<Panel<V>> {
    match rule {
        QuadratureRule::AdaptiveSimpson => {
            let h = b - a;
            // Knots are where integrands jump, and half-open kernels take the
            // value of the next piece exactly at a knot. Sampling just inside
            // gives the one-sided limits; the shift is far below any tolerance.
            let eta = (1e-11 * h).max(8.0 * f64::EPSILON * a.abs().max(b.abs())).min(0.125 * h);
            let fv = [
                eval_checked(f, a + eta)?,
                eval_checked(f, a + 0.25 * h)?,
                eval_checked(f, a + 0.5 * h)?,
                eval_checked(f, a + 0.75 * h)?,
                eval_checked(f, b - eta)?,
            ];
            Ok(simpson_panel(a, b, fv))
        }
        QuadratureRule::GaussLegendreComposite => gauss_estimate(f, a, b),
    }
}

fn gauss_estimate<V: QuadValue, F: Fn(f64) -> V>(f: &F, a: f64, b: f64) -> Result<Panel<V>> {
    let rule = panel_rule();
    let m = 0.5 * (a + b);
    let whole = gauss_panel(rule, f, a, b)?;
    let halves = gauss_panel(rule, f, a, m)? + gauss_panel(rule, f, m, b)?;
    Ok(Panel { a, b, value: halves, err: (halves - whole).magnitude(), fv: [V::zero(); 5] })
}

fn split<V: QuadValue, F: Fn(f64) -> V>(f: &F, p: &Panel<V>, rule: QuadratureRule) -> Result<(Panel<V>, Panel<V>)> {
    let m = 0.5 * (p.a + p.b);
    match rule {
        QuadratureRule::AdaptiveSimpson => {
            let h = p.b - p.a;
            let l1 = eval_checked(f, p.a + 0.125 * h)?;
            let l3 = eval_checked(f, p.a + 0.375 * h)?;
            let r1 = eval_checked(f, p.a + 0.625 * h)?;
            let r3 = eval_checked(f, p.a + 0.875 * h)?;
            let left = simpson_panel(p.a, m, [p.fv[0], l1, p.fv[1], l3, p.fv[2]]);
            let right = simpson_panel(m, p.b, [p.fv[2], r1, p.fv[3], r3, p.fv[4]]);
            Ok((left, right))
        }
        QuadratureRule::GaussLegendreComposite => Ok((gauss_estimate(f, p.a, m)?, gauss_estimate(f, m, p.b)?)),
    }
}

/// Integrates `f` over consecutive panels given by the sorted `knots`.
pub fn integrate_knots<V: QuadValue, F: Fn(f64) -> V>(f: F, knots: &[f64], spec: &IntegrationSpec) -> Result<V> {
    spec.validate()?;
    if knots.len() < 2 {
        return Ok(V::zero());
    }
    let mut panels: Vec<Panel<V>> = Vec::new();
    let mut alive: Vec<bool> = Vec::new();
    let mut heap = BinaryHeap::new();
    let mut total_err = 0.0;
    for w in knots.windows(2) {
        if w[1] > w[0] {
            let p = new_panel(&f, w[0], w[1], spec.rule)?;
            total_err += p.err;
            heap.push(HeapEntry { err: p.err, idx: panels.len() });
            panels.push(p);
            alive.push(true);
        }
    }
    let mut splits = 0usize;
    while total_err > spec.abs_tol {
        let Some(top) = heap.pop() else { break };
        let p = panels[top.idx];
        let width = p.b - p.a;
        let scale = p.a.abs().max(p.b.abs()).max(1.0);
        if width <= 64.0 * f64::EPSILON * scale {
            // cannot bisect further; accept as is
            total_err -= p.err;
            continue;
        }
        if splits >= spec.max_subdivisions {
            return Err(Error::BudgetExceeded { subdivisions: splits, estimate: total_err });
        }
        splits += 1;
        let (l, r) = split(&f, &p, spec.rule)?;
        alive[top.idx] = false;
        total_err += l.err + r.err - p.err;
        for child in [l, r] {
            heap.push(HeapEntry { err: child.err, idx: panels.len() });
            panels.push(child);
            alive.push(true);
        }
        if total_err <= spec.abs_tol {
            // guard against drift in the running sum
            total_err = panels.iter().zip(&alive).filter(|(_, &a)| a).map(|(p, _)| p.err).sum();
        }
    }
    let mut live: Vec<&Panel<V>> = panels.iter().zip(&alive).filter(|(_, &a)| a).map(|(p, _)| p).collect();
    live.sort_by(|x, y| x.a.total_cmp(&y.a));
    Ok(live.iter().fold(V::zero(), |acc, p| acc + p.value))
}

/// Sorted knot list `lo, (breaks strictly inside), hi`.
pub fn knots_between(lo: f64, hi: f64, breaks: &[f64]) -> Vec<f64> {
    let mut knots = Vec::with_capacity(breaks.len() + 2);
    knots.push(lo);
    knots.extend(breaks.iter().copied().filter(|&b| b > lo && b < hi));
    knots.push(hi);
    knots.sort_by(f64::total_cmp);
    knots.dedup();
    knots
}

fn oriented<V: QuadValue>(lo: f64, hi: f64, run: impl FnOnce(f64, f64) -> Result<V>) -> Result<V> {
    if !lo.is_finite() || !hi.is_finite() {
        return Err(Error::InvalidInput(format!("integration bounds must be finite, got [{lo}, {hi}]")));
    }
    if lo == hi {
        Ok(V::zero())
    } else if lo < hi {
        run(lo, hi)
    } else {
        Ok(run(hi, lo)? * -1.0)
    }
}

/// `∫_lo^hi f`. An empty interval gives exactly 0; `lo > hi` flips the sign.
pub fn integrate<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, spec: &IntegrationSpec) -> Result<f64> {
    integrate_with_breaks(f, lo, hi, &[], spec)
}

/// `∫_lo^hi f` with panels split at the given breakpoints.
pub fn integrate_with_breaks<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    breaks: &[f64],
    spec: &IntegrationSpec,
) -> Result<f64> {
    oriented(lo, hi, |a, b| integrate_knots(&f, &knots_between(a, b, breaks), spec))
}

pub fn integrate_complex<F: Fn(f64) -> Complex64>(
    f: F,
    lo: f64,
    hi: f64,
    breaks: &[f64],
    spec: &IntegrationSpec,
) -> Result<Complex64> {
    oriented(lo, hi, |a, b| integrate_knots(&f, &knots_between(a, b, breaks), spec))
}

/// `(∫ |f|^p)^(1/p)` over `[lo, hi]`.
pub fn lp_norm<F: Fn(f64) -> f64>(f: F, p: f64, lo: f64, hi: f64, spec: &IntegrationSpec) -> Result<f64> {
    lp_norm_with_breaks(f, p, lo, hi, &[], spec)
}

pub fn lp_norm_with_breaks<F: Fn(f64) -> f64>(
    f: F,
    p: f64,
    lo: f64,
    hi: f64,
    breaks: &[f64],
    spec: &IntegrationSpec,
) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(Error::InvalidInput(format!("Lp norm needs p >= 1, got {p}")));
    }
    if !(lo <= hi) {
        return Err(Error::InvalidInput(format!("support must satisfy lo <= hi, got [{lo}, {hi}]")));
    }
    let integral = if p == 1.0 {
        integrate_with_breaks(|t| f(t).abs(), lo, hi, breaks, spec)?
    } else if p == 2.0 {
        integrate_with_breaks(|t| f(t) * f(t), lo, hi, breaks, spec)?
    } else {
        integrate_with_breaks(|t| f(t).abs().powf(p), lo, hi, breaks, spec)?
    };
    Ok(integral.max(0.0).powf(1.0 / p))
}

/// Samples `f` on the grid, failing on the first non-finite value.
pub fn sample<F: Fn(f64) -> f64>(f: F, grid: &GridSpec) -> Result<Vec<f64>> {
    grid.nodes()
        .into_iter()
        .map(|t| {
            let v = f(t);
            if v.is_finite() {
                Ok(v)
            } else {
                Err(Error::NonFinite { at: t })
            }
        })
        .collect()
}

pub fn sup_norm<F: Fn(f64) -> f64>(f: F, grid: &GridSpec) -> Result<f64> {
    Ok(sample(f, grid)?.into_iter().fold(0.0, |m: f64, v| m.max(v.abs())))
}

/// Discrete modulus of continuity: `max |f(x) - f(y)|` over grid pairs with
/// `|x - y| <= delta`. This is a lower bound on the true supremum that
/// converges as the grid refines.
pub fn modulus_of_continuity<F: Fn(f64) -> f64>(f: F, delta: f64, grid: &GridSpec) -> Result<f64> {
    if !(delta > 0.0) {
        return Err(Error::InvalidInput(format!("delta must be > 0, got {delta}")));
    }
    let values = sample(f, grid)?;
    Ok(modulus_of_samples(&values, grid.spacing(), delta))
}

/// Modulus of continuity of already-sampled values on a uniform grid.
pub fn modulus_of_samples(values: &[f64], spacing: f64, delta: f64) -> f64 {
    let n = values.len();
    if n < 2 {
        return 0.0;
    }
    let window = ((delta / spacing) * (1.0 + 1e-12)).floor();
    let w = if window >= (n - 1) as f64 { n - 1 } else { window as usize };
    if w == 0 {
        return 0.0;
    }
    // sliding max/min over windows of w+1 consecutive samples
    let mut maxq: VecDeque<usize> = VecDeque::new();
    let mut minq: VecDeque<usize> = VecDeque::new();
    let mut best: f64 = 0.0;
    for i in 0..n {
        while maxq.back().is_some_and(|&k| values[k] <= values[i]) {
            maxq.pop_back();
        }
        maxq.push_back(i);
        while minq.back().is_some_and(|&k| values[k] >= values[i]) {
            minq.pop_back();
        }
        minq.push_back(i);
        let start = i.saturating_sub(w);
        while maxq.front().is_some_and(|&k| k < start) {
            maxq.pop_front();
        }
        while minq.front().is_some_and(|&k| k < start) {
            minq.pop_front();
        }
        best = best.max(values[maxq[0]] - values[minq[0]]);
    }
    best
}
