//! Wavelet-based sampling Kantorovich operators and the multiresolution
//! machinery around them.
//!
//! The crate is organised bottom-up:
//!
//! * [`numerics`]: adaptive quadrature, Lp norms, grids and the modulus of continuity.
//! * [`kernels`]: exact piecewise-polynomial kernels (Haar, cardinal B-splines,
//!   literal formula kernels), their Fourier transforms and moments.
//! * [`signal`]: analytic and dyadically sampled signals.
//! * [`operators`]: the Kantorovich filtering operator, the Durrmeyer sampling
//!   operator, dyadic sample reconstruction and pointwise error curves.
//! * [`mra`]: QMF checks, the Mallat recursion, projections, the continuous
//!   wavelet transform, admissibility and the cascade algorithm.
//! * [`error_bounds`]: the computable approximation bounds and rate fits.
//!
//! Grid-shaped workloads (error curves, projections, per-frequency sums) run
//! through [`parallel::Execution`]. With the `parallel` feature (default) the
//! parallel policy uses rayon; results are assembled in index order so they are
//! bitwise identical to the sequential policy.

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod error_bounds;
pub mod kernels;
pub mod mra;
pub mod numerics;
pub mod operators;
pub mod parallel;
mod poly;
pub mod signal;

pub use error::{Error, Result};
pub use kernels::PiecewisePolyKernel;
pub use numerics::{GridSpec, IntegrationSpec, QuadratureRule};
pub use operators::{Normalization, OperatorConfig};
pub use parallel::Execution;
pub use signal::Signal;

pub use num_complex::Complex64;
