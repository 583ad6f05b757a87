//! Real signals of one variable: analytic callables or uniform samples.
//!
//! A sampled signal is queried off-grid with the Haar hold, i.e. the dyadic
//! sampling formula with the indicator kernel and no prefactor: the value on
//! `[origin + k·spacing, origin + (k+1)·spacing)` is `samples[k]`, and 0 outside
//! the sampled range.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernels::{self, PiecewisePolyKernel};
use crate::numerics::{self, gauss_legendre, IntegrationSpec};
use crate::poly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SignalKind {
    Analytic,
    Sampled,
}

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Clone)]
enum Repr {
    Analytic(RealFn),
    Sampled { samples: Arc<[f64]>, origin: f64, spacing: f64 },
}

#[derive(Clone)]
pub struct Signal {
    name: String,
    repr: Repr,
    domain: (f64, f64),
    breakpoints: Vec<f64>,
    discontinuities: Vec<f64>,
}

impl fmt::Debug for Signal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Signal")
            .field("name", &self.name)
            .field("kind", &self.kind())
            .field("domain", &self.domain)
            .finish()
    }
}

impl Signal {
    /// Wraps a callable. `domain` is the region of interest; evaluation
    /// outside it still calls `f` (see [`Signal::windowed`]).
    pub fn analytic<F>(name: impl Into<String>, domain: (f64, f64), f: F) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        check_domain(domain)?;
        Ok(Signal {
            name: name.into(),
            repr: Repr::Analytic(Arc::new(f)),
            domain,
            breakpoints: Vec::new(),
            discontinuities: Vec::new(),
        })
    }

    /// Uniform samples with Haar-hold interpolation.
    pub fn sampled(name: impl Into<String>, samples: Vec<f64>, origin: f64, spacing: f64) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::InvalidInput("a sampled signal needs at least one sample".into()));
        }
        if !(spacing > 0.0 && spacing.is_finite() && origin.is_finite()) {
            return Err(Error::InvalidInput("sample spacing must be positive and finite".into()));
        }
        if let Some(i) = samples.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { at: origin + i as f64 * spacing });
        }
        let domain = (origin, origin + samples.len() as f64 * spacing);
        Ok(Signal {
            name: name.into(),
            repr: Repr::Sampled { samples: samples.into(), origin, spacing },
            domain,
            breakpoints: Vec::new(),
            discontinuities: Vec::new(),
        })
    }

    /// Samples `h` at the dyadic nodes `ϱ/2^J` lying in `[lo, hi)` of its
    /// domain and holds them.
    pub fn sampled_from(h: &Signal, level: i32) -> Result<Self> {
        let scale = 2f64.powi(level);
        let (lo, hi) = h.domain;
        let first = (lo * scale).ceil() as i64;
        let end = (hi * scale).ceil() as i64;
        let samples = (first..end.max(first + 1)).map(|r| h.eval(r as f64 / scale)).collect();
        Self::sampled(format!("{}@J={level}", h.name), samples, first as f64 / scale, 1.0 / scale)
    }

    /// A kernel viewed as a signal on its support.
    pub fn from_kernel(k: &PiecewisePolyKernel) -> Self {
        let kk = k.clone();
        let bp = k.breakpoints().to_vec();
        let mut s = Signal::analytic(k.name(), k.support(), move |t| kk.evaluate(t)).expect("kernel support is valid");
        s.breakpoints = bp.clone();
        // every knot may be a jump; declaring it costs nothing
        s.discontinuities = bp;
        s
    }

    pub fn constant(c: f64) -> Self {
        Signal::analytic(format!("constant({c})"), (0.0, 1.0), move |_| c).expect("unit domain")
    }

    /// Declares kinks or other non-smooth points for the integrators.
    pub fn with_breakpoints(mut self, mut b: Vec<f64>) -> Self {
        self.breakpoints.append(&mut b);
        self.breakpoints.sort_by(f64::total_cmp);
        self.breakpoints.dedup();
        self
    }

    /// Declares jumps; they are also breakpoints.
    pub fn with_discontinuities(mut self, d: Vec<f64>) -> Self {
        self = self.with_breakpoints(d.clone());
        self.discontinuities.extend(d);
        self.discontinuities.sort_by(f64::total_cmp);
        self.discontinuities.dedup();
        self
    }

    pub fn with_domain(mut self, domain: (f64, f64)) -> Result<Self> {
        check_domain(domain)?;
        self.domain = domain;
        Ok(self)
    }

    /// Same signal, but identically 0 outside its domain. The domain ends
    /// become breakpoints.
    pub fn windowed(&self) -> Self {
        let inner = self.clone();
        let (lo, hi) = self.domain;
        let mut s = Signal {
            name: format!("{}|[{lo},{hi}]", self.name),
            repr: Repr::Analytic(Arc::new(move |t| if t >= lo && t <= hi { inner.eval(t) } else { 0.0 })),
            domain: self.domain,
            breakpoints: self.breakpoints.clone(),
            discontinuities: self.discontinuities.clone(),
        };
        if let Repr::Sampled { .. } = self.repr {
            s.repr = self.repr.clone();
        } else {
            s = s.with_breakpoints(vec![lo, hi]);
        }
        s
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> SignalKind {
        match self.repr {
            Repr::Analytic(_) => SignalKind::Analytic,
            Repr::Sampled { .. } => SignalKind::Sampled,
        }
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub fn discontinuities(&self) -> &[f64] {
        &self.discontinuities
    }

    /// Sample array, origin and spacing of a sampled signal.
    pub fn samples(&self) -> Option<(&[f64], f64, f64)> {
        match &self.repr {
            Repr::Sampled { samples, origin, spacing } => Some((samples, *origin, *spacing)),
            Repr::Analytic(_) => None,
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        match &self.repr {
            Repr::Analytic(f) => f(t),
            Repr::Sampled { samples, origin, spacing } => {
                let x = ((t - origin) / spacing).floor();
                if x >= 0.0 && x < samples.len() as f64 {
                    samples[x as usize]
                } else {
                    0.0
                }
            }
        }
    }

    /// Declared breakpoints (and, for sampled signals, sample cell edges)
    /// strictly inside `(lo, hi)`.
    pub fn breakpoints_in(&self, lo: f64, hi: f64) -> Vec<f64> {
        match &self.repr {
            Repr::Analytic(_) => self.breakpoints.iter().copied().filter(|&b| b > lo && b < hi).collect(),
            Repr::Sampled { samples, origin, spacing } => {
                let first = ((lo - origin) / spacing).floor().max(0.0) as usize;
                let last = (((hi - origin) / spacing).ceil().max(0.0) as usize).min(samples.len());
                (first..=last).map(|k| origin + k as f64 * spacing).filter(|&b| b > lo && b < hi).collect()
            }
        }
    }

    /// `∫ h(α·y + β) k(y) dy`, integrated piece by piece over the kernel's
    /// closed polynomial pieces, so that kernel jumps never sit inside a panel.
    /// With `restrict` the signal is treated as 0 outside its domain.
    pub fn integrate_against(
        &self,
        k: &PiecewisePolyKernel,
        alpha: f64,
        beta: f64,
        restrict: bool,
        spec: &IntegrationSpec,
    ) -> Result<f64> {
        if alpha == 0.0 || !alpha.is_finite() || !beta.is_finite() {
            return Err(Error::InvalidInput("affine map must have finite non-zero scale".into()));
        }
        // signal domain expressed in y
        let (d0, d1) = {
            let a = (self.domain.0 - beta) / alpha;
            let b = (self.domain.1 - beta) / alpha;
            (a.min(b), a.max(b))
        };
        let bp = k.breakpoints();
        let piece_tol = IntegrationSpec { abs_tol: spec.abs_tol / k.pieces().len() as f64, ..*spec };
        let mut total = 0.0;
        for (i, p) in k.pieces().iter().enumerate() {
            let (a, b) = (bp[i], bp[i + 1]);
            let (lo, hi) = if restrict { (a.max(d0), b.min(d1)) } else { (a, b) };
            if !(lo < hi) || p.iter().all(|&c| c == 0.0) {
                continue;
            }
            let (u0, u1) = {
                let x = alpha * lo + beta;
                let y = alpha * hi + beta;
                (x.min(y), x.max(y))
            };
            let mut knots: Vec<f64> = self.breakpoints_in(u0, u1).into_iter().map(|u| (u - beta) / alpha).collect();
            knots.push(lo);
            knots.push(hi);
            knots.sort_by(f64::total_cmp);
            knots.dedup();
            let piece = |y: f64| poly::eval(p, y - a);
            total += match self.repr {
                // piecewise constant between knots: exact Gauss–Legendre per cell
                Repr::Sampled { .. } => {
                    let rule = gauss_legendre(p.len() / 2 + 1);
                    let mut acc = 0.0;
                    for w in knots.windows(2) {
                        let v = self.eval(alpha * (0.5 * (w[0] + w[1])) + beta);
                        if v != 0.0 {
                            acc += v * numerics::gauss_panel(&rule, &piece, w[0], w[1])?;
                        }
                    }
                    acc
                }
                Repr::Analytic(_) => {
                    numerics::integrate_knots(|y: f64| self.eval(alpha * y + beta) * piece(y), &knots, &piece_tol)?
                }
            };
        }
        Ok(total)
    }
}

fn check_domain(domain: (f64, f64)) -> Result<()> {
    if !(domain.0.is_finite() && domain.1.is_finite() && domain.0 < domain.1) {
        return Err(Error::InvalidInput(format!("invalid domain [{}, {}]", domain.0, domain.1)));
    }
    Ok(())
}

/// Registry names accepted by [`preset`].
pub const PRESET_NAMES: &[&str] = &["sin2pi", "ramp", "constant", "zero", "square-wave", "bspline2", "bspline3"];

/// Edges of the square-wave preset: +1 on `[0.3, 0.8)`, -1 elsewhere.
pub const SQUARE_WAVE_EDGES: [f64; 2] = [0.3, 0.8];

pub fn sin2pi() -> Signal {
    Signal::analytic("sin2pi", (0.0, 1.0), |t| (2.0 * PI * t).sin()).expect("unit domain")
}

pub fn preset(name: &str) -> Result<Signal> {
    match name {
        "sin2pi" => Ok(sin2pi()),
        "ramp" => Signal::analytic("ramp", (0.0, 1.0), |t| t),
        "constant" => Ok(Signal::constant(1.0).with_domain((0.0, 1.0))?.renamed("constant")),
        "zero" => Ok(Signal::constant(0.0).renamed("zero")),
        "square-wave" => {
            let [a, b] = SQUARE_WAVE_EDGES;
            Ok(Signal::analytic("square-wave", (0.0, 1.0), move |t| if (a..b).contains(&t) { 1.0 } else { -1.0 })?
                .with_discontinuities(SQUARE_WAVE_EDGES.to_vec()))
        }
        "bspline2" | "bspline3" => {
            let k = kernels::kernel_by_name(name)?;
            Ok(Signal::from_kernel(&k))
        }
        _ => Err(Error::UnknownName(name.to_string())),
    }
}

impl Signal {
    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn haar_hold() {
        let s = Signal::sampled("s", vec![1.0, 2.0, 3.0], 0.0, 0.25).unwrap();
        assert_eq!(s.eval(0.0), 1.0);
        assert_eq!(s.eval(0.3), 2.0);
        assert_eq!(s.eval(0.74), 3.0);
        assert_eq!(s.eval(0.75), 0.0);
        assert_eq!(s.eval(-0.01), 0.0);
        assert_eq!(s.domain(), (0.0, 0.75));
    }

    #[test]
    fn sampled_from_dyadic_nodes() {
        let s = Signal::sampled_from(&preset("ramp").unwrap(), 2).unwrap();
        let (v, origin, h) = s.samples().unwrap();
        assert_eq!(v, &[0.0, 0.25, 0.5, 0.75]);
        assert_eq!((origin, h), (0.0, 0.25));
    }

    #[test]
    fn integrate_against_haar() {
        let spec = IntegrationSpec::default();
        let ramp = preset("ramp").unwrap();
        // ∫_0^1 (y/2 + 1/2) dy = 3/4
        let v = ramp.integrate_against(&kernels::haar(), 0.5, 0.5, false, &spec).unwrap();
        assert!((v - 0.75).abs() < 1e-12);
        let s = Signal::sampled("s", vec![1.0, 3.0], 0.0, 0.5).unwrap();
        let v = s.integrate_against(&kernels::haar(), 1.0, 0.0, false, &spec).unwrap();
        assert!((v - 2.0).abs() < 1e-15);
    }

    #[test]
    fn restriction_to_domain() {
        let spec = IntegrationSpec::default();
        let one = Signal::constant(1.0);
        let k = kernels::bspline(0).unwrap();
        // kernel over [0,1] mapped to u in [0.5, 1.5]; only half lies in [0, 1]
        let v = one.integrate_against(&k, 1.0, 0.5, true, &spec).unwrap();
        assert!((v - 0.5).abs() < 1e-14);
        let far = one.integrate_against(&k, 1.0, 10.0, true, &spec).unwrap();
        assert_eq!(far, 0.0);
    }

    #[test]
    fn presets() {
        for name in PRESET_NAMES {
            assert!(preset(name).is_ok(), "{name}");
        }
        let sq = preset("square-wave").unwrap();
        assert_eq!(sq.eval(0.5), 1.0);
        assert_eq!(sq.eval(0.8), -1.0);
        assert_eq!(sq.discontinuities(), &SQUARE_WAVE_EDGES);
        assert!(matches!(preset("chirp"), Err(Error::UnknownName(_))));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Signal::sampled("s", vec![], 0.0, 1.0).is_err());
        assert!(Signal::sampled("s", vec![1.0], 0.0, 0.0).is_err());
        assert!(matches!(Signal::sampled("s", vec![f64::NAN], 0.0, 1.0), Err(Error::NonFinite { .. })));
        assert!(Signal::analytic("x", (1.0, 1.0), |t| t).is_err());
    }
}
