//! Covariance-based dissimilarity measures between sample paths.
//!
//! Two paths are compared through the empirical covariance matrices of their
//! increments over every (start, block length) window, weighted by a summable
//! sequence and combined with the Frobenius distance.

mod analytic;
mod empirical;
mod local;
mod table;

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

pub use analytic::{analytic_d, analytic_d_matched, analytic_d_ranges};
pub use empirical::{d_hat, empirical_cov, rho_count_closed_form, IncrementPath};
pub use local::{d_star_hat, d_tilde_star, localized_increments};
pub use table::{dissimilarity_matrix, dissimilarity_matrix_serial, pairwise_table};

use crate::error::{Error, Result};
use crate::matrix::CovMatrix;
use crate::scalar::Scalar;

/// Signed logarithm: ln x for x > 0, −ln(−x) for x < 0 and 0 at 0.
pub fn log_star<T: Scalar>(x: T) -> T {
    if x > T::zero() {
        x.ln()
    } else if x < T::zero() {
        -(-x).ln()
    } else {
        T::zero()
    }
}

/// Frobenius distance between two covariance matrices, optionally after the
/// entrywise log* transform.
pub fn rho<T: Scalar>(m1: &CovMatrix<T>, m2: &CovMatrix<T>, use_log_star: bool) -> Result<T> {
    if use_log_star {
        m1.map(log_star).frobenius_distance(&m2.map(log_star))
    } else {
        m1.frobenius_distance(m2)
    }
}

/// Positive summable weight sequence indexed from 1.
#[derive(Debug, Clone, Copy)]
pub enum WeightRule {
    /// w_j = 1 / (j² (j+1)²)
    InversePairSquare,
    Custom(fn(usize) -> f64),
}

impl WeightRule {
    pub fn weight(&self, j: usize) -> f64 {
        match self {
            Self::InversePairSquare => {
                let j = j as f64;
                1.0 / (j * j * (j + 1.0) * (j + 1.0))
            }
            Self::Custom(f) => f(j),
        }
    }

    pub(crate) fn table<T: Scalar>(&self, upto: usize) -> Vec<T> {
        // index 0 unused
        (0..=upto)
            .map(|j| if j == 0 { T::zero() } else { T::lit(self.weight(j)) })
            .collect()
    }
}

/// Largest covariance block dimension m_n used for paths of length n.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockRule {
    /// ⌊ln n⌋ clamped to [1, n].
    LogFloor,
    /// Fixed value, clamped to [1, n].
    Fixed(usize),
}

/// Length K of the localized increment windows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Window {
    /// K = n − 2: a single window covering the whole path.
    Auto,
    Fixed(usize),
}

/// Counts Frobenius-distance evaluations performed inside `d_hat`.
#[derive(Debug, Default)]
pub struct RhoCounter(AtomicU64);

impl RhoCounter {
    pub fn get(&self) -> u64 {
        self.0.load(Ordering::Relaxed)
    }

    pub fn reset(&self) {
        self.0.store(0, Ordering::Relaxed);
    }

    pub(crate) fn add(&self, n: u64) {
        self.0.fetch_add(n, Ordering::Relaxed);
    }
}

/// Everything that determines a dissimilarity value.
#[derive(Debug, Clone)]
pub struct DissimConfig {
    pub weights: WeightRule,
    pub max_block: BlockRule,
    pub window: Window,
    /// Number L of localized windows averaged.
    pub windows: usize,
    pub use_log_star: bool,
    /// Optional instrumentation; does not affect results.
    pub counter: Option<Arc<RhoCounter>>,
}

impl Default for DissimConfig {
    fn default() -> Self {
        Self {
            weights: WeightRule::InversePairSquare,
            max_block: BlockRule::LogFloor,
            window: Window::Auto,
            windows: 1,
            use_log_star: false,
            counter: None,
        }
    }
}

impl DissimConfig {
    pub fn with_log_star(mut self, on: bool) -> Self {
        self.use_log_star = on;
        self
    }

    pub fn with_window(mut self, window: Window, windows: usize) -> Self {
        self.window = window;
        self.windows = windows;
        self
    }

    /// Attaches a fresh counter and returns a handle to it.
    pub fn instrument(&mut self) -> Arc<RhoCounter> {
        let c = Arc::new(RhoCounter::default());
        self.counter = Some(Arc::clone(&c));
        c
    }

    pub fn block_limit(&self, n: usize) -> usize {
        let raw = match self.max_block {
            BlockRule::LogFloor => (n.max(1) as f64).ln().floor() as usize,
            BlockRule::Fixed(m) => m,
        };
        raw.clamp(1, n.max(1))
    }

    /// Resolves (K, L) for sample paths whose common length is `n`.
    pub fn resolve_window(&self, n: usize) -> Result<(usize, usize)> {
        let k = match self.window {
            Window::Auto => n.checked_sub(2).ok_or_else(|| {
                Error::InfeasibleWindow(format!("paths of length {n} have no increments"))
            })?,
            Window::Fixed(k) => k,
        };
        let capacity = n.saturating_sub(k + 1);
        if self.windows == 0 || self.windows > capacity {
            return Err(Error::InfeasibleWindow(format!(
                "L = {} windows of K = {k} need 1 <= L <= n - K - 1 = {} (n = {n})",
                self.windows,
                n as i64 - k as i64 - 1
            )));
        }
        Ok((k, self.windows))
    }
}
