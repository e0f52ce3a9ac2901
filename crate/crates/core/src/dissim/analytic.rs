use crate::matrix::CovMatrix;
use crate::process::fbm_increment_cov_matrix;
use crate::scalar::{pairwise_sum, Scalar};

use super::{rho, DissimConfig};

/// Population dissimilarity between two fBm increment structures
/// (index, unit variance), summed over block sizes `1..=m_max` and window
/// offsets `1..=l_max(m)`.
///
/// Increments are stationary, so the block covariance does not depend on the
/// offset and each block contributes ρ_m · w_m · Σ_l w_l.
pub fn analytic_d_ranges<T: Scalar>(
    (h1, var1): (T, T),
    (h2, var2): (T, T),
    m_max: usize,
    l_max: impl Fn(usize) -> usize,
    cfg: &DissimConfig,
) -> T {
    let terms: Vec<T> = (1..=m_max)
        .map(|m| {
            let a: CovMatrix<T> = fbm_increment_cov_matrix(h1, var1, m, T::one());
            let b = fbm_increment_cov_matrix(h2, var2, m, T::one());
            let r = rho(&a, &b, cfg.use_log_star).expect("equal block sizes");
            let offsets: Vec<T> = (1..=l_max(m)).map(|l| T::lit(cfg.weights.weight(l))).collect();
            T::lit(cfg.weights.weight(m)) * r * pairwise_sum(&offsets)
        })
        .collect();
    pairwise_sum(&terms)
}

/// Partial sum of the population dissimilarity over m, l ≤ `truncation`.
pub fn analytic_d<T: Scalar>(h1: T, h2: T, var1: T, var2: T, truncation: usize, cfg: &DissimConfig) -> T {
    analytic_d_ranges((h1, var1), (h2, var2), truncation, |_| truncation, cfg)
}

/// Population counterpart of `d_hat` on series of length `n`: the same
/// (m, l) index ranges as the empirical sum.
pub fn analytic_d_matched<T: Scalar>(h1: T, h2: T, var1: T, var2: T, n: usize, cfg: &DissimConfig) -> T {
    analytic_d_ranges((h1, var1), (h2, var2), cfg.block_limit(n), |m| n - m + 1, cfg)
}
