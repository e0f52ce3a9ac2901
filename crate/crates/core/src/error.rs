use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("time {t} lies outside the Hurst function domain [{lo}, {hi}]")]
    HurstDomain { t: f64, lo: f64, hi: f64 },

    #[error("Hurst value {0} is not in the open interval (0, 1)")]
    HurstRange(f64),

    #[error("tabulated Hurst lookup at time {t} maps to index {index}, table has {len} entries")]
    TabulatedIndex { t: f64, index: i64, len: usize },

    #[error("gamma evaluation is not finite for D({0}, {1})")]
    NonFiniteGamma(f64, f64),

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("empty summation range: {0}")]
    EmptyRange(String),

    #[error("infeasible window configuration: {0}")]
    InfeasibleWindow(String),

    #[error("covariance factorization failed even with diagonal jitter {0:e}")]
    Factorization(f64),

    #[error("cannot form {kappa} clusters from {n} points")]
    TooManyClusters { kappa: usize, n: usize },

    #[error("non-finite dissimilarity at ({0}, {1})")]
    NonFinite(usize, usize),

    #[error("index sets differ: clustering has {0} points, ground truth has {1}")]
    IndexMismatch(usize, usize),

    #[error("infeasible schedule: {0}")]
    InfeasibleSchedule(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
