//! Exact piecewise-polynomial kernels.
//!
//! A [`PiecewisePolyKernel`] is a compactly supported function given by a
//! strictly increasing knot list and one polynomial per knot interval. Each
//! polynomial is stored in *local* coordinates: on `[b_i, b_{i+1})` the value is
//! `sum_k pieces[i][k] * (t - b_i)^k`. Intervals are half-open, so the value at
//! the last knot (and anywhere outside the support) is exactly 0.
//!
//! Cardinal B-splines are built by repeated convolution with the Haar
//! indicator and remember their order, which lets [`PiecewisePolyKernel::fourier_transform`]
//! use the closed form `sinc(ω/2)^(n+1)` with the centring phase.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{self, gauss_legendre, GridSpec, IntegrationSpec};
use crate::poly;

/// Largest B-spline order [`bspline`] will build.
pub const BSPLINE_ORDER_CAP: usize = 16;

/// Upper limit on the count reported by [`PiecewisePolyKernel::vanishing_moments`].
pub const VANISHING_MOMENT_CAP: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum KernelFamily {
    /// Degree-`order` cardinal B-spline on `[shift, shift + order + 1]`.
    CardinalBSpline { order: usize, shift: f64 },
    #[default]
    General,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "KernelDocument", into = "KernelDocument")]
pub struct PiecewisePolyKernel {
    name: String,
    breakpoints: Vec<f64>,
    pieces: Vec<Vec<f64>>,
    family: KernelFamily,
}

/// JSON shape: `{name, breakpoints, pieces, family?}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelDocument {
    pub name: String,
    pub breakpoints: Vec<f64>,
    pub pieces: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "is_general")]
    pub family: KernelFamily,
}

fn is_general(f: &KernelFamily) -> bool {
    *f == KernelFamily::General
}

impl TryFrom<KernelDocument> for PiecewisePolyKernel {
    type Error = Error;
    fn try_from(doc: KernelDocument) -> Result<Self> {
        let mut k = PiecewisePolyKernel::new(doc.name, doc.breakpoints, doc.pieces)?;
        k.family = doc.family;
        Ok(k)
    }
}

impl From<PiecewisePolyKernel> for KernelDocument {
    fn from(k: PiecewisePolyKernel) -> Self {
        KernelDocument { name: k.name, breakpoints: k.breakpoints, pieces: k.pieces, family: k.family }
    }
}

impl PiecewisePolyKernel {
    /// Builds a kernel from local-coordinate pieces.
    pub fn new(name: impl Into<String>, breakpoints: Vec<f64>, pieces: Vec<Vec<f64>>) -> Result<Self> {
        if breakpoints.len() < 2 {
            return Err(Error::InvalidInput("a kernel needs at least two breakpoints".into()));
        }
        if breakpoints.iter().any(|b| !b.is_finite()) {
            return Err(Error::InvalidInput("breakpoints must be finite".into()));
        }
        if breakpoints.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidInput("breakpoints must be strictly increasing".into()));
        }
        if pieces.len() + 1 != breakpoints.len() {
            return Err(Error::InvalidInput(format!(
                "{} pieces for {} breakpoints (expected {})",
                pieces.len(),
                breakpoints.len(),
                breakpoints.len() - 1
            )));
        }
        if pieces.iter().flatten().any(|c| !c.is_finite()) {
            return Err(Error::InvalidInput("polynomial coefficients must be finite".into()));
        }
        let pieces = pieces.into_iter().map(poly::trim).collect();
        Ok(PiecewisePolyKernel { name: name.into(), breakpoints, pieces, family: KernelFamily::General })
    }

    /// Builds a kernel from pieces written in the global variable `t`, as
    /// formulas are usually printed (`½(2 - t)²` on `[1, 2)` and so on).
    pub fn from_global_pieces(name: impl Into<String>, breakpoints: Vec<f64>, pieces: Vec<Vec<f64>>) -> Result<Self> {
        if pieces.len() + 1 != breakpoints.len() {
            return Err(Error::InvalidInput("pieces count must equal breakpoints count - 1".into()));
        }
        let local = pieces.iter().zip(&breakpoints).map(|(p, &b)| poly::shift(p, b)).collect();
        Self::new(name, breakpoints, local)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[Vec<f64>] {
        &self.pieces
    }

    pub fn family(&self) -> KernelFamily {
        self.family
    }

    pub fn support(&self) -> (f64, f64) {
        (self.breakpoints[0], self.breakpoints[self.breakpoints.len() - 1])
    }

    pub fn degree(&self) -> usize {
        self.pieces.iter().map(|p| p.len() - 1).max().unwrap_or(0)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Horner evaluation of the active piece; 0 outside `[first, last)`.
    pub fn evaluate(&self, t: f64) -> f64 {
        let (lo, hi) = self.support();
        if !(t >= lo && t < hi) {
            return 0.0;
        }
        let i = self.breakpoints.partition_point(|&b| b <= t) - 1;
        poly::eval(&self.pieces[i], t - self.breakpoints[i])
    }

    /// `t -> k(t - s)`.
    pub fn shifted(&self, s: f64) -> Self {
        let family = match self.family {
            KernelFamily::CardinalBSpline { order, shift } => KernelFamily::CardinalBSpline { order, shift: shift + s },
            KernelFamily::General => KernelFamily::General,
        };
        PiecewisePolyKernel {
            name: self.name.clone(),
            breakpoints: self.breakpoints.iter().map(|b| b + s).collect(),
            pieces: self.pieces.clone(),
            family,
        }
    }

    /// `t -> c * k(t)`.
    pub fn scaled(&self, c: f64) -> Self {
        PiecewisePolyKernel {
            name: format!("{}*{}", c, self.name),
            breakpoints: self.breakpoints.clone(),
            pieces: self.pieces.iter().map(|p| p.iter().map(|x| x * c).collect()).collect(),
            family: KernelFamily::General,
        }
    }

    /// Convolution with the Haar indicator: `t -> ∫_{t-1}^{t} k(s) ds`.
    pub fn convolve_with_box(&self) -> Self {
        let n = self.pieces.len();
        // piecewise antiderivative F, continuous, F(b_0) = 0
        let mut f_pieces = Vec::with_capacity(n);
        let mut f_at_knots = vec![0.0; n + 1];
        for i in 0..n {
            let mut a = poly::antiderivative(&self.pieces[i]);
            a[0] += f_at_knots[i];
            let len = self.breakpoints[i + 1] - self.breakpoints[i];
            f_at_knots[i + 1] = poly::eval(&a, len);
            f_pieces.push(a);
        }
        let total = f_at_knots[n];
        let f_local = |t0: f64| -> Vec<f64> {
            // polynomial in y of F(t0 + y), valid until the next knot of F
            let (lo, hi) = self.support();
            if t0 < lo {
                vec![0.0]
            } else if t0 >= hi {
                vec![total]
            } else {
                let i = self.breakpoints.partition_point(|&b| b <= t0) - 1;
                poly::shift(&f_pieces[i], t0 - self.breakpoints[i])
            }
        };

        let mut knots: Vec<f64> = self.breakpoints.iter().flat_map(|&b| [b, b + 1.0]).collect();
        knots.sort_by(f64::total_cmp);
        knots.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * a.abs().max(1.0));

        let pieces = knots
            .windows(2)
            .map(|w| {
                let mut p = f_local(w[0]);
                poly::add_assign(&mut p, &f_local(w[0] - 1.0), -1.0);
                poly::trim(p)
            })
            .collect();
        let family = match self.family {
            KernelFamily::CardinalBSpline { order, shift } => KernelFamily::CardinalBSpline { order: order + 1, shift },
            KernelFamily::General => KernelFamily::General,
        };
        PiecewisePolyKernel { name: format!("{}*box", self.name), breakpoints: knots, pieces, family }
    }

    /// Fourier transform `∫ k(t) e^{-iωt} dt`.
    ///
    /// Cardinal B-splines use the closed form; other kernels use
    /// [`Self::fourier_transform_piecewise`].
    pub fn fourier_transform(&self, omega: f64) -> Complex64 {
        match self.family {
            KernelFamily::CardinalBSpline { order, shift } => bspline_fourier(order, shift, omega),
            KernelFamily::General => self.fourier_transform_piecewise(omega),
        }
    }

    /// Exact transform of each polynomial piece. Pieces with `|ω|·len > 1` use
    /// the terminating integration-by-parts series
    /// `Σ_k (q^(k)(0) - q^(k)(L) e^{-iωL}) / (iω)^(k+1)`; shorter ones use a
    /// single Gauss–Legendre panel, which is exact to rounding there.
    pub fn fourier_transform_piecewise(&self, omega: f64) -> Complex64 {
        let rule = gauss_legendre(12 + self.degree().div_ceil(2));
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, p) in self.pieces.iter().enumerate() {
            let a = self.breakpoints[i];
            let len = self.breakpoints[i + 1] - a;
            if (omega * len).abs() <= 1.0 {
                let f = |t: f64| Complex64::from_polar(poly::eval(p, t - a), -omega * t);
                acc += numerics::gauss_panel(&rule, &f, a, a + len).expect("finite polynomial integrand");
                continue;
            }
            let iw = Complex64::new(0.0, omega);
            let end_phase = Complex64::from_polar(1.0, -omega * len);
            let mut q = p.clone();
            let mut denom = iw;
            let mut local = Complex64::new(0.0, 0.0);
            loop {
                local += (Complex64::from(q[0]) - end_phase * poly::eval(&q, len)) / denom;
                if q.len() == 1 {
                    break;
                }
                q = q.iter().enumerate().skip(1).map(|(k, c)| k as f64 * c).collect();
                denom *= iw;
            }
            acc += local * Complex64::from_polar(1.0, -omega * a);
        }
        acc
    }

    /// Brute-force quadrature of the Fourier integral on Gauss–Legendre
    /// sub-panels with `|ω|·h <= 2`; an independent check on the closed forms.
    pub fn fourier_transform_quadrature(&self, omega: f64) -> Complex64 {
        let rule = gauss_legendre(12 + self.degree().div_ceil(2));
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, p) in self.pieces.iter().enumerate() {
            let a = self.breakpoints[i];
            let b = self.breakpoints[i + 1];
            let sub = ((omega.abs() * (b - a)) / 2.0).ceil().max(1.0) as usize;
            let h = (b - a) / sub as f64;
            for s in 0..sub {
                let lo = a + s as f64 * h;
                let f = |t: f64| Complex64::from_polar(poly::eval(p, t - a), -omega * t);
                acc += numerics::gauss_panel(&rule, &f, lo, lo + h).expect("finite polynomial integrand");
            }
        }
        acc
    }

    /// `∫ k(t) g(t - s) dt`, exact up to rounding (polynomial on every panel of
    /// the merged knot set, integrated at interior Gauss nodes only).
    pub fn inner_product_shifted(&self, other: &PiecewisePolyKernel, s: f64) -> f64 {
        let (lo, hi) = self.support();
        let (olo, ohi) = other.support();
        let (lo, hi) = (lo.max(olo + s), hi.min(ohi + s));
        if !(lo < hi) {
            return 0.0;
        }
        let mut knots: Vec<f64> = self
            .breakpoints
            .iter()
            .copied()
            .chain(other.breakpoints.iter().map(|b| b + s))
            .filter(|&b| b >= lo && b <= hi)
            .collect();
        knots.sort_by(f64::total_cmp);
        knots.dedup();
        let rule = gauss_legendre((self.degree() + other.degree()) / 2 + 1);
        let f = |t: f64| self.evaluate(t) * other.evaluate(t - s);
        knots
            .windows(2)
            .map(|w| numerics::gauss_panel(&rule, &f, w[0], w[1]).expect("finite polynomial integrand"))
            .sum()
    }

    /// `∫ u^k k(u) du`, exact up to rounding.
    pub fn moment(&self, k: usize) -> f64 {
        let mut acc = 0.0;
        for (i, p) in self.pieces.iter().enumerate() {
            let a = self.breakpoints[i];
            let b = self.breakpoints[i + 1];
            let rule = gauss_legendre((p.len() + k) / 2 + 1);
            let f = |t: f64| t.powi(k as i32) * poly::eval(p, t - a);
            acc += numerics::gauss_panel(&rule, &f, a, b).expect("finite polynomial integrand");
        }
        acc
    }

    /// Total mass `∫ k`.
    pub fn mass(&self) -> f64 {
        self.moment(0)
    }

    /// `∫ |u|^m |k(u)| du` by breakpoint-aware adaptive quadrature.
    pub fn abs_moment(&self, m: usize, spec: &IntegrationSpec) -> Result<f64> {
        let mut knots = self.breakpoints.clone();
        let (lo, hi) = self.support();
        if lo < 0.0 && hi > 0.0 {
            knots.push(0.0);
            knots.sort_by(f64::total_cmp);
        }
        numerics::integrate_knots(|u: f64| u.abs().powi(m as i32) * self.evaluate(u).abs(), &knots, spec)
    }

    /// Largest `m` with `|∫ u^k k(u) du| <= tol` for every `k < m`.
    pub fn vanishing_moments(&self, tol: f64) -> usize {
        (0..VANISHING_MOMENT_CAP).find(|&k| self.moment(k).abs() > tol).unwrap_or(VANISHING_MOMENT_CAP)
    }

    /// `Σ_ϱ k(t - ϱ)` over the finitely many integer translates covering `t`.
    pub fn translate_sum(&self, t: f64) -> f64 {
        let (lo, hi) = self.support();
        let first = (t - hi).floor() as i64 + 1;
        let last = (t - lo).floor() as i64;
        (first..=last).map(|r| self.evaluate(t - r as f64)).sum()
    }

    /// `max_t |Σ_ϱ k(t - ϱ) - 1|` over the grid.
    pub fn partition_of_unity_defect(&self, grid: &GridSpec) -> f64 {
        grid.nodes().into_iter().map(|t| (self.translate_sum(t) - 1.0).abs()).fold(0.0, f64::max)
    }

    /// Interpolation defects at the integers: against the standard cardinal
    /// condition (`k(0) = 1`, `k(n) = 0` otherwise) and against the reversed
    /// condition (`k(0) = 0`, `k(n) = 1` otherwise).
    pub fn cardinal_defects(&self) -> (f64, f64) {
        let (lo, hi) = self.support();
        let mut standard: f64 = 0.0;
        let mut reversed: f64 = 0.0;
        for n in (lo.floor() as i64 - 1)..=(hi.ceil() as i64 + 1) {
            let v = self.evaluate(n as f64);
            let (s, r) = if n == 0 { (1.0, 0.0) } else { (0.0, 1.0) };
            standard = standard.max((v - s).abs());
            reversed = reversed.max((v - r).abs());
        }
        (standard, reversed)
    }
}

fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-8 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

/// `(sin(ω/2)/(ω/2))^(n+1) e^{-iω(shift + (n+1)/2)}`.
pub fn bspline_fourier(order: usize, shift: f64, omega: f64) -> Complex64 {
    let mag = sinc(omega / 2.0).powi(order as i32 + 1);
    Complex64::from_polar(1.0, -omega * (shift + (order as f64 + 1.0) / 2.0)) * mag
}

/// Real, centred B-spline transform `(sin(ω/2)/(ω/2))^(n+1)`.
pub fn bspline_fourier_centered(order: usize, omega: f64) -> f64 {
    sinc(omega / 2.0).powi(order as i32 + 1)
}

/// Indicator of `[0, 1)`.
pub fn haar() -> PiecewisePolyKernel {
    PiecewisePolyKernel {
        name: "haar".into(),
        breakpoints: vec![0.0, 1.0],
        pieces: vec![vec![1.0]],
        family: KernelFamily::CardinalBSpline { order: 0, shift: 0.0 },
    }
}

/// Haar wavelet: 1 on `[0, ½)`, -1 on `[½, 1)`.
pub fn haar_wavelet() -> PiecewisePolyKernel {
    PiecewisePolyKernel::new("haar-wavelet", vec![0.0, 0.5, 1.0], vec![vec![1.0], vec![-1.0]])
        .expect("valid Haar wavelet")
}

/// Degree-`n` cardinal B-spline on `[0, n + 1]`.
pub fn bspline(n: usize) -> Result<PiecewisePolyKernel> {
    if n > BSPLINE_ORDER_CAP {
        return Err(Error::OrderOverflow { order: n, cap: BSPLINE_ORDER_CAP });
    }
    let mut k = haar();
    for _ in 0..n {
        k = k.convolve_with_box();
    }
    Ok(k.with_name(format!("bspline{n}")))
}

/// Degree-`n` cardinal B-spline moved to `[shift, shift + n + 1]`.
pub fn bspline_shifted(n: usize, shift: f64) -> Result<PiecewisePolyKernel> {
    Ok(bspline(n)?.shifted(shift))
}

/// The two-piece quadratic written out for the second-order B-spline example:
/// `½t²` on `[0, 1)`, `½(2 - t)²` on `[1, 2)`.
pub fn quadratic_two_piece() -> PiecewisePolyKernel {
    PiecewisePolyKernel::from_global_pieces(
        "example1-quadratic",
        vec![0.0, 1.0, 2.0],
        vec![vec![0.0, 0.0, 0.5], vec![2.0, -2.0, 0.5]],
    )
    .expect("valid literal kernel")
}

/// Which support to give the literal cubic `(2 - |t|)³ / 6`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CubicSupport {
    /// `[0, 2]`, as the formula's stated range reads.
    HalfLine,
    /// `[-2, 2]`, as the `|t|` suggests.
    Symmetric,
}

pub fn cubic_literal(support: CubicSupport) -> PiecewisePolyKernel {
    // (2 - t)^3 / 6 = (8 - 12t + 6t^2 - t^3) / 6
    let right = vec![8.0 / 6.0, -2.0, 1.0, -1.0 / 6.0];
    match support {
        CubicSupport::HalfLine => {
            PiecewisePolyKernel::from_global_pieces("example2-cubic-half", vec![0.0, 2.0], vec![right])
        }
        CubicSupport::Symmetric => {
            let left = vec![8.0 / 6.0, 2.0, 1.0, 1.0 / 6.0];
            PiecewisePolyKernel::from_global_pieces(
                "example2-cubic-symmetric",
                vec![-2.0, 0.0, 2.0],
                vec![left, right],
            )
        }
    }
    .expect("valid literal kernel")
}

/// Looks a kernel up by registry name.
pub fn kernel_by_name(name: &str) -> Result<PiecewisePolyKernel> {
    match name {
        "haar" => Ok(haar()),
        "haar-wavelet" => Ok(haar_wavelet()),
        "example1-quadratic" => Ok(quadratic_two_piece()),
        "example2-cubic-half" => Ok(cubic_literal(CubicSupport::HalfLine)),
        "example2-cubic-symmetric" => Ok(cubic_literal(CubicSupport::Symmetric)),
        _ => match name.strip_prefix("bspline").and_then(|s| s.parse::<usize>().ok()) {
            Some(n) => bspline(n),
            None => Err(Error::UnknownName(name.to_string())),
        },
    }
}

pub const KERNEL_NAMES: &[&str] = &[
    "haar",
    "haar-wavelet",
    "bspline<n>",
    "example1-quadratic",
    "example2-cubic-half",
    "example2-cubic-symmetric",
];

/// Structural summary of a kernel.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelReport {
    pub name: String,
    pub support: (f64, f64),
    pub partition_of_unity_defect: f64,
    pub total_mass: f64,
    pub vanishing_moments: usize,
    /// `abs_moments[m] = ∫ |u|^m |k(u)| du`
    pub abs_moments: Vec<f64>,
    pub cardinal_defect_standard: f64,
    pub cardinal_defect_reversed: f64,
}

pub fn kernel_report(k: &PiecewisePolyKernel, max_moment: usize, spec: &IntegrationSpec) -> Result<KernelReport> {
    // the translate sum is 1-periodic, one period is enough
    let grid = GridSpec::new(0.0, 1.0, 1025)?;
    let abs_moments = (0..=max_moment).map(|m| k.abs_moment(m, spec)).collect::<Result<Vec<_>>>()?;
    let (std_defect, rev_defect) = k.cardinal_defects();
    Ok(KernelReport {
        name: k.name().to_string(),
        support: k.support(),
        partition_of_unity_defect: k.partition_of_unity_defect(&grid),
        total_mass: k.mass(),
        vanishing_moments: k.vanishing_moments(1e-12),
        abs_moments,
        cardinal_defect_standard: std_defect,
        cardinal_defect_reversed: rev_defect,
    })
}

/// `ω` with `|ω| <= 8π` spread uniformly; used by consistency checks.
pub fn sample_frequencies(count: usize) -> Vec<f64> {
    (0..count).map(|i| -8.0 * PI + 16.0 * PI * (i as f64 + 0.5) / count as f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn haar_values() {
        let h = haar();
        assert_eq!(h.evaluate(0.5), 1.0);
        assert_eq!(h.evaluate(0.0), 1.0);
        assert_eq!(h.evaluate(1.0), 0.0);
        assert_eq!(h.evaluate(-0.2), 0.0);
        assert_eq!(h.evaluate(2.0), 0.0);
    }

    #[test]
    fn bspline_zero_is_haar() {
        let b0 = bspline(0).unwrap();
        assert_eq!(b0.breakpoints(), haar().breakpoints());
        assert_eq!(b0.pieces(), haar().pieces());
    }

    #[test]
    fn quadratic_first_piece() {
        let b2 = bspline(2).unwrap();
        assert!((b2.evaluate(0.5) - 0.125).abs() < 1e-15);
        // the standard quadratic is 3/4 at its middle knot interval centre
        assert!((b2.evaluate(1.5) - 0.75).abs() < 1e-15);
        assert_eq!(b2.support(), (0.0, 3.0));
    }

    #[test]
    fn literal_quadratic_matches_printed_pieces() {
        let k = quadratic_two_piece();
        assert!((k.evaluate(0.5) - 0.125).abs() < 1e-15);
        assert!((k.evaluate(1.5) - 0.125).abs() < 1e-15);
        assert_eq!(k.evaluate(2.0), 0.0);
    }

    #[test]
    fn order_cap() {
        assert!(bspline(BSPLINE_ORDER_CAP).is_ok());
        assert_eq!(
            bspline(BSPLINE_ORDER_CAP + 1).unwrap_err(),
            Error::OrderOverflow { order: BSPLINE_ORDER_CAP + 1, cap: BSPLINE_ORDER_CAP }
        );
    }

    #[test]
    fn cubic_transform_values() {
        let b3 = bspline(3).unwrap();
        assert!((b3.fourier_transform(0.0).norm() - 1.0).abs() < 1e-15);
        assert!(b3.fourier_transform(2.0 * PI).norm() < 1e-15);
        let expected = (2.0 / PI).powi(4);
        assert!((b3.fourier_transform(PI).norm() - expected).abs() < 1e-15);
    }

    #[test]
    fn haar_moments() {
        let spec = IntegrationSpec::default();
        let h = haar();
        assert!((h.abs_moment(0, &spec).unwrap() - 1.0).abs() < 1e-14);
        assert!((h.abs_moment(1, &spec).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn vanishing_moment_counts() {
        assert_eq!(haar_wavelet().vanishing_moments(1e-12), 1);
        assert_eq!(haar().vanishing_moments(1e-12), 0);
        // odd about its centre: the zeroth moment vanishes
        let odd = PiecewisePolyKernel::from_global_pieces("odd", vec![-1.0, 1.0], vec![vec![0.0, 1.0]]).unwrap();
        assert!(odd.vanishing_moments(1e-12) >= 1);
    }

    #[test]
    fn partition_of_unity() {
        let grid = GridSpec::new(-1.0, 3.0, 801).unwrap();
        assert!(haar().partition_of_unity_defect(&grid) <= 1e-15);
        assert!(bspline(2).unwrap().partition_of_unity_defect(&grid) <= 1e-12);
        let doubled = haar().scaled(2.0);
        assert!((doubled.partition_of_unity_defect(&grid) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn cardinal_conditions() {
        let (std_h, rev_h) = haar().cardinal_defects();
        assert_eq!(std_h, 0.0);
        assert_eq!(rev_h, 1.0);
        // the hat centred on 0 interpolates
        let hat = bspline_shifted(1, -1.0).unwrap();
        assert!(hat.cardinal_defects().0 < 1e-15);
    }

    #[test]
    fn validation() {
        assert!(PiecewisePolyKernel::new("x", vec![0.0, 0.0], vec![vec![1.0]]).is_err());
        assert!(PiecewisePolyKernel::new("x", vec![0.0, 1.0, 2.0], vec![vec![1.0]]).is_err());
        assert!(PiecewisePolyKernel::new("x", vec![0.0], vec![]).is_err());
        assert!(PiecewisePolyKernel::new("x", vec![0.0, f64::NAN], vec![vec![1.0]]).is_err());
    }

    #[test]
    fn json_document_round_trip() {
        let k = bspline(3).unwrap();
        let text = serde_json::to_string(&k).unwrap();
        let back: PiecewisePolyKernel = serde_json::from_str(&text).unwrap();
        assert_eq!(back, k);
        let plain: PiecewisePolyKernel =
            serde_json::from_str(r#"{"name":"box","breakpoints":[0,1],"pieces":[[1]]}"#).unwrap();
        assert_eq!(plain.family(), KernelFamily::General);
        assert_eq!(plain.evaluate(0.3), 1.0);
        let bad = serde_json::from_str::<PiecewisePolyKernel>(r#"{"name":"b","breakpoints":[1,0],"pieces":[[1]]}"#);
        assert!(bad.is_err());
    }

    #[test]
    fn registry() {
        assert_eq!(kernel_by_name("bspline3").unwrap().support(), (0.0, 4.0));
        assert!(matches!(kernel_by_name("daubechies4"), Err(Error::UnknownName(_))));
    }

    #[test]
    fn literal_cubic_readings() {
        let half = cubic_literal(CubicSupport::HalfLine);
        let sym = cubic_literal(CubicSupport::Symmetric);
        assert!((half.evaluate(0.0) - 8.0 / 6.0).abs() < 1e-15);
        assert!((sym.evaluate(-1.0) - 1.0 / 6.0).abs() < 1e-15);
        assert!((half.mass() - 2.0 / 3.0).abs() < 1e-14);
        assert!((sym.mass() - 4.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn general_transform_matches_quadrature() {
        for k in [quadratic_two_piece(), cubic_literal(CubicSupport::Symmetric), haar_wavelet()] {
            for w in sample_frequencies(64).into_iter().chain([0.0, 1e-3, 100.0]) {
                let d = (k.fourier_transform_piecewise(w) - k.fourier_transform_quadrature(w)).norm();
                assert!(d < 1e-9, "{} at {w}: {d}", k.name());
            }
        }
    }

    #[test]
    fn shifted_inner_products() {
        let hat = bspline(1).unwrap();
        assert!((hat.inner_product_shifted(&hat, 0.0) - 2.0 / 3.0).abs() < 1e-14);
        assert!((hat.inner_product_shifted(&hat, 1.0) - 1.0 / 6.0).abs() < 1e-14);
        assert!((hat.inner_product_shifted(&hat, -1.0) - 1.0 / 6.0).abs() < 1e-14);
        assert_eq!(hat.inner_product_shifted(&hat, 2.0), 0.0);
        assert!((haar().inner_product_shifted(&haar(), 0.5) - 0.5).abs() < 1e-15);
    }
}
