use std::f64::consts::PI;

use proptest::prelude::*;
use wavesamp::error_bounds::{self, B1Reading};
use wavesamp::kernels::{self, bspline, bspline_fourier_centered};
use wavesamp::mra::{self, dwt, project, CascadeSpec, FilterPair};
use wavesamp::numerics::{self, gauss_legendre, gauss_panel, lp_norm, modulus_of_continuity};
use wavesamp::operators::apply_kantorovich;
use wavesamp::signal::{self, Signal};
use wavesamp::{Complex64, Execution, GridSpec, IntegrationSpec, Normalization, OperatorConfig};

fn config() -> ProptestConfig {
    ProptestConfig { cases: 48, ..ProptestConfig::default() }
}

fn grid() -> GridSpec {
    GridSpec::new(0.0, 1.0, 513).unwrap()
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn modulus_is_monotone_in_delta(a in 0.5f64..5.0, d1 in 0.01f64..0.4, d2 in 0.01f64..0.4) {
        let f = |t: f64| (a * t).sin() + t * t;
        let (lo, hi) = if d1 <= d2 { (d1, d2) } else { (d2, d1) };
        let g = grid();
        prop_assert!(modulus_of_continuity(f, lo, &g).unwrap() <= modulus_of_continuity(f, hi, &g).unwrap());
    }

    #[test]
    fn modulus_scales_with_function(c in -4.0f64..4.0, d in 0.01f64..0.4) {
        let g = grid();
        let base = modulus_of_continuity(|t: f64| (3.0 * t).cos(), d, &g).unwrap();
        let scaled = modulus_of_continuity(|t: f64| c * (3.0 * t).cos(), d, &g).unwrap();
        prop_assert!((scaled - c.abs() * base).abs() <= 1e-12 * (1.0 + base));
    }

    #[test]
    fn lp_norm_is_absolutely_homogeneous(c in -5.0f64..5.0, p in 1.0f64..4.0) {
        let spec = IntegrationSpec::with_tol(1e-12);
        let base = lp_norm(|t: f64| t.exp() - 1.5, p, 0.0, 1.0, &spec).unwrap();
        let scaled = lp_norm(|t: f64| c * (t.exp() - 1.5), p, 0.0, 1.0, &spec).unwrap();
        prop_assert!((scaled - c.abs() * base).abs() <= 1e-8 * (1.0 + base));
    }

    #[test]
    fn gauss_legendre_is_exact_to_degree_2n_minus_1(n in 1usize..12, a in -3.0f64..0.0, b in 0.1f64..3.0) {
        let rule = gauss_legendre(n);
        let deg = 2 * n - 1;
        let f = |t: f64| t.powi(deg as i32);
        let exact = (b.powi(deg as i32 + 1) - a.powi(deg as i32 + 1)) / (deg as f64 + 1.0);
        let got: f64 = gauss_panel(&rule, &f, a, b).unwrap();
        prop_assert!((got - exact).abs() <= 1e-10 * (1.0 + exact.abs()));
    }

    #[test]
    fn bspline_convolution_recursion(n in 0usize..8, t in -1.0f64..10.0) {
        let next = bspline(n).unwrap().convolve_with_box();
        prop_assert!((next.evaluate(t) - bspline(n + 1).unwrap().evaluate(t)).abs() <= 1e-12);
    }

    #[test]
    fn bspline_fourier_closed_form_matches_piecewise(n in 0usize..6, w in -8.0 * PI..8.0 * PI) {
        let k = bspline(n).unwrap();
        let closed = k.fourier_transform(w);
        prop_assert!((closed - k.fourier_transform_piecewise(w)).norm() <= 1e-8);
        prop_assert!((closed - k.fourier_transform_quadrature(w)).norm() <= 1e-8);
    }

    #[test]
    fn bspline_vanishes_outside_support(n in 0usize..9, off in 0.0f64..5.0) {
        let k = bspline(n).unwrap();
        let (a, b) = k.support();
        prop_assert_eq!(k.evaluate(a - off - 1e-9), 0.0);
        prop_assert_eq!(k.evaluate(b + off), 0.0);
    }

    #[test]
    fn dwt_is_linear(
        x in prop::collection::vec(-1.0f64..1.0, 16),
        y in prop::collection::vec(-1.0f64..1.0, 16),
        c in -3.0f64..3.0,
        name in prop::sample::select(FilterPair::NAMES),
    ) {
        let f = FilterPair::by_name(name).unwrap();
        let z: Vec<f64> = x.iter().zip(&y).map(|(a, b)| a + c * b).collect();
        let (dx, dy, dz) = (dwt(&x, &f, 4, 3).unwrap(), dwt(&y, &f, 4, 3).unwrap(), dwt(&z, &f, 4, 3).unwrap());
        for (level, d) in &dz.detail {
            for (i, v) in d.iter().enumerate() {
                prop_assert!((v - dx.detail[level][i] - c * dy.detail[level][i]).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn dwt_shift_by_two_shifts_coefficients_by_one(x in prop::collection::vec(-1.0f64..1.0, 16)) {
        let f = FilterPair::haar();
        let mut shifted = vec![0.0, 0.0];
        shifted.extend_from_slice(&x);
        let (a, b) = mra::dwt_step(&x, &f);
        let (sa, sb) = mra::dwt_step(&shifted, &f);
        prop_assert_eq!(sa[0], 0.0);
        prop_assert_eq!(&sa[1..], &a[..]);
        prop_assert_eq!(&sb[1..], &b[..]);
    }

    #[test]
    fn haar_step_preserves_energy_with_factor_two(x in prop::collection::vec(-2.0f64..2.0, 2..40)) {
        let mut x = x;
        if x.len() % 2 == 1 {
            x.push(0.0);
        }
        let (a, b) = mra::dwt_step(&x, &FilterPair::haar());
        let fine: f64 = x.iter().map(|v| v * v).sum();
        let coarse: f64 = a.iter().chain(&b).map(|v| v * v).sum();
        prop_assert!((fine - 2.0 * coarse).abs() <= 1e-12 * (1.0 + fine));
    }

    #[test]
    fn haar_projection_synthesizes_cell_averages(level in 1i32..6, t in 0.01f64..0.99) {
        let h = signal::sin2pi();
        let spec = IntegrationSpec::default();
        let p = project(&h, level, &kernels::haar(), &spec, Execution::Sequential).unwrap();
        let s = 2f64.powi(level);
        let cell = (s * t).floor();
        let (a, b) = (cell / s, (cell + 1.0) / s);
        let average = ((2.0 * PI * a).cos() - (2.0 * PI * b).cos()) / (2.0 * PI) * s;
        prop_assert!((p.synthesize(&kernels::haar(), t) - average).abs() <= 1e-9);
    }

    #[test]
    fn b1_is_homogeneous(c in 0.1f64..10.0, level in 0i32..4) {
        let spec = IntegrationSpec::with_tol(1e-14);
        let f = |w: f64| Complex64::from(bspline_fourier_centered(3, w));
        let chi = |w: f64| Complex64::from(bspline_fourier_centered(1, w));
        let base = error_bounds::b1(f, chi, level, B1Reading::Linear, &spec).unwrap();
        let scaled = error_bounds::b1(|w| f(w) * c, chi, level, B1Reading::Linear, &spec).unwrap();
        prop_assert!((scaled - c * base).abs() <= 1e-9 * (1.0 + c * base));
    }

    #[test]
    fn prop3_total_is_symmetric(a in 0.0f64..10.0, b in 0.0f64..10.0) {
        let ab = error_bounds::prop3_total(a, b).unwrap();
        prop_assert_eq!(ab, error_bounds::prop3_total(b, a).unwrap());
        prop_assert!(ab >= a.max(b));
    }

    #[test]
    fn vanishing_bound_scales_with_k_and_level(k in 0.1f64..10.0, j in 0i32..8, t in 0.0f64..1.0) {
        let spec = IntegrationSpec::default();
        let (w, box_) = (kernels::haar_wavelet(), kernels::haar());
        let one = error_bounds::vanishing_moment_bound(1.0, &w, &box_, 1, j, t, &spec).unwrap().value;
        let many = error_bounds::vanishing_moment_bound(k, &w, &box_, 1, j, t, &spec).unwrap().value;
        let finer = error_bounds::vanishing_moment_bound(1.0, &w, &box_, 1, j + 1, t, &spec).unwrap().value;
        prop_assert!((many - k * one).abs() <= 1e-12 * many.max(1.0));
        prop_assert!((finer - one / 2.0).abs() <= 1e-12);
    }

    #[test]
    fn kantorovich_is_linear(a in -3.0f64..3.0, b in -3.0f64..3.0, j in 0i32..6, t in 0.0f64..1.0) {
        let cfg = OperatorConfig::new(j, bspline(2).unwrap(), kernels::haar());
        let f = Signal::analytic("f", (0.0, 1.0), |u| (2.0 * PI * u).sin()).unwrap();
        let g = Signal::analytic("g", (0.0, 1.0), |u| u * u).unwrap();
        let combo = Signal::analytic("af+bg", (0.0, 1.0), move |u| a * (2.0 * PI * u).sin() + b * u * u).unwrap();
        let lhs = apply_kantorovich(&cfg, &combo, t).unwrap().value;
        let rhs = a * apply_kantorovich(&cfg, &f, t).unwrap().value + b * apply_kantorovich(&cfg, &g, t).unwrap().value;
        prop_assert!((lhs - rhs).abs() <= 1e-9);
    }

    #[test]
    fn mass_normalized_operator_reproduces_constants(c in -10.0f64..10.0, j in -1i32..7, t in -1.0f64..2.0) {
        for kappa in [kernels::haar(), bspline(1).unwrap(), bspline(2).unwrap()] {
            let cfg = OperatorConfig::new(j, kappa, kernels::haar()).with_normalization(Normalization::MassNormalized);
            let v = apply_kantorovich(&cfg, &Signal::constant(c), t).unwrap().value;
            prop_assert!((v - c).abs() <= 1e-10);
        }
    }
}

#[test]
fn bspline_masses_are_one() {
    let spec = IntegrationSpec::default();
    for n in 0..=8 {
        let k = bspline(n).unwrap();
        let (a, b) = k.support();
        let m = numerics::integrate_with_breaks(|t| k.evaluate(t), a, b, k.breakpoints(), &spec).unwrap();
        assert!((m - 1.0).abs() <= 1e-10, "n = {n}");
    }
}

#[test]
fn haar_cascade_translates_partition_unity() {
    let g = GridSpec::new(-1.0, 2.0, 301).unwrap();
    let r = mra::cascade(&FilterPair::haar(), &CascadeSpec::default(), &g).unwrap();
    for (t, v) in g.nodes().iter().zip(&r.values) {
        let want = if (0.0..1.0).contains(t) { 1.0 } else { 0.0 };
        assert_eq!(*v, want, "t = {t}");
    }
    assert_eq!(r.iterations, 1);
}
