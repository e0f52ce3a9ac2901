//! Clustering of discretely sampled locally asymptotically self-similar
//! processes with covariance-based dissimilarities.
//!
//! - [`process`]: exact-covariance simulation of fBm and mBm paths.
//! - [`dissim`]: empirical, localized and normalized dissimilarities.
//! - [`offline`] / [`online`]: the two clustering algorithms.
//! - [`eval`]: ground truth, misclassification rates and the synthetic
//!   experiment protocol.
//!
//! Numeric code is generic over [`Scalar`] (`f32` or `f64`); the `*F64`
//! aliases below fix the common double-precision case.

// `!(x > 0)` style checks are deliberate: NaN has to be rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dissim;
pub mod error;
pub mod eval;
pub mod hurst;
pub mod matrix;
pub mod offline;
pub mod online;
pub mod process;
pub mod scalar;
pub mod special;

pub use dissim::{
    analytic_d, d_hat, d_star_hat, d_tilde_star, dissimilarity_matrix, empirical_cov, localized_increments, log_star,
    rho, BlockRule, DissimConfig, IncrementPath, RhoCounter, WeightRule, Window,
};
pub use error::{Error, Result};
pub use hurst::HurstFunction;
pub use matrix::{CovMatrix, DissimMatrix, SquareMatrix};
pub use offline::{offline_cluster, Clustering};
pub use online::{online_cluster, online_cluster_matrix, OnlineSnapshot};
pub use process::{
    build_cov_matrix, d_factor, fbm_increment_cov, fbm_increment_cov_matrix, fgn_sampler, mbm_cov, mbm_sampler, path_rng,
    sample_path, GaussianSampler, SamplePath,
};
pub use scalar::Scalar;

pub type HurstFunctionF64 = HurstFunction<f64>;
pub type SamplePathF64 = SamplePath<f64>;
pub type IncrementPathF64 = IncrementPath<f64>;
pub type CovMatrixF64 = CovMatrix<f64>;
pub type DissimMatrixF64 = DissimMatrix<f64>;
pub type OnlineSnapshotF64 = OnlineSnapshot<f64>;
pub type GaussianSamplerF64 = GaussianSampler<f64>;
