use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument {value} outside the open interval (0, 1)")]
    Domain { value: f64 },

    #[error("support function is not strictly convex: min(h + h'') = {min_radius:.6e} at theta = {theta:.6}")]
    NotConvex { min_radius: f64, theta: f64 },

    #[error("perturbation step {step:.3e} leaves the convex class; largest admissible step is {max_step:.3e}")]
    StepRejected { step: f64, max_step: f64 },

    #[error("integral did not converge on [{a}, {b}] (estimate {estimate:.3e}, error {error:.3e})")]
    Divergent { a: f64, b: f64, estimate: f64, error: f64 },

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("body is not strictly Gaussian mean-convex: min H_gamma = {min_h:.6e}")]
    NotMeanConvex { min_h: f64 },

    #[error("interior point is not strictly inside the body (min <x - p, nu> = {margin:.3e})")]
    BadInteriorPoint { margin: f64 },

    #[error("least-squares system is rank deficient: rank {rank} < {size}")]
    RankDeficient { rank: usize, size: usize },

    #[error("test function has zero boundary mean")]
    ZeroMean,

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
