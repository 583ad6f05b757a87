use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("integrand returned a non-finite value at t = {at}")]
    NonFinite { at: f64 },

    #[error("quadrature budget of {subdivisions} subdivisions exhausted (error estimate {estimate:e})")]
    BudgetExceeded { subdivisions: usize, estimate: f64 },

    #[error("B-spline order {order} exceeds the cap of {cap}")]
    OrderOverflow { order: usize, cap: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("kernel has {found} vanishing moments, {required} required")]
    InsufficientMoments { required: usize, found: usize },

    #[error("degenerate fit: the level values have zero variance")]
    DegenerateFit,

    #[error("{requested} levels requested, at most {max} possible")]
    TooManyLevels { requested: usize, max: usize },

    #[error("integral diverges: {0}")]
    Divergent(String),

    #[error("cascade did not converge after {iterations} iterations (last change {last_change:e})")]
    NonConvergent { iterations: usize, last_change: f64 },

    #[error("filter violates normality (|sum h1 - 2| = {defect:e})")]
    NotNormalized { defect: f64 },

    #[error("degenerate kernel: {0}")]
    DegenerateKernel(String),

    #[error("unknown name `{0}`")]
    UnknownName(String),
}
