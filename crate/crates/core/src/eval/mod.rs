//! Ground truth bookkeeping, scoring, synthetic mBm datasets and the
//! end-to-end experiment runner.

mod dataset;
mod experiment;
mod truth;

pub use dataset::{
    build_offline_dataset, build_online_dataset, offline_length, online_group_size, online_length, ClusterMode,
    ExperimentConfig, HurstCase, Measure, SimulatedPool,
};
pub use experiment::{run_experiment, ExperimentTable, RateRow, SummaryRow};
pub use truth::{ground_truth_restrict, misclassification_rate, GroundTruth};
