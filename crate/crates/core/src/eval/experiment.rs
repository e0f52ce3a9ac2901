use rayon::prelude::*;

use crate::dissim::{d_star_hat, d_tilde_star, pairwise_table};
use crate::error::Result;
use crate::matrix::DissimMatrix;
use crate::offline::{offline_cluster, Clustering};
use crate::online::online_cluster_matrix;
use crate::process::SamplePath;

use super::dataset::{ClusterMode, ExperimentConfig, Measure, SimulatedPool};
use super::truth::{misclassification_rate, GroundTruth};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateRow {
    pub seed: u64,
    pub epoch: usize,
    pub rate: f64,
}

/// Per-epoch aggregate over seeds; `std_rate` is the sample standard
/// deviation (0 for a single seed).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SummaryRow {
    pub epoch: usize,
    pub mean_rate: f64,
    pub std_rate: f64,
    pub seeds: usize,
}

/// Misclassification rates keyed and sorted by (seed, epoch).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ExperimentTable {
    pub rows: Vec<RateRow>,
}

impl ExperimentTable {
    pub fn from_rows(mut rows: Vec<RateRow>) -> Self {
        rows.sort_by_key(|r| (r.seed, r.epoch));
        Self { rows }
    }

    pub fn merge(tables: impl IntoIterator<Item = ExperimentTable>) -> Self {
        Self::from_rows(tables.into_iter().flat_map(|t| t.rows).collect())
    }

    pub fn summary(&self) -> Vec<SummaryRow> {
        let mut epochs: Vec<usize> = self.rows.iter().map(|r| r.epoch).collect();
        epochs.sort_unstable();
        epochs.dedup();
        epochs
            .into_iter()
            .map(|epoch| {
                let rates: Vec<f64> = self.rows.iter().filter(|r| r.epoch == epoch).map(|r| r.rate).collect();
                let k = rates.len() as f64;
                let mean_rate = rates.iter().sum::<f64>() / k;
                let std_rate = if rates.len() > 1 {
                    (rates.iter().map(|r| (r - mean_rate).powi(2)).sum::<f64>() / (k - 1.0)).sqrt()
                } else {
                    0.0
                };
                SummaryRow {
                    epoch,
                    mean_rate,
                    std_rate,
                    seeds: rates.len(),
                }
            })
            .collect()
    }

    pub fn mean_at(&self, epoch: usize) -> Option<f64> {
        self.summary().into_iter().find(|s| s.epoch == epoch).map(|s| s.mean_rate)
    }
}

/// Simulates, clusters and scores every (seed, epoch) of the configuration.
pub fn run_experiment(ec: &ExperimentConfig) -> Result<ExperimentTable> {
    ec.validate()?;
    let samplers = ec.samplers()?;
    let per_seed = |&seed: &u64| -> Result<Vec<RateRow>> {
        let pool = SimulatedPool::simulate(ec, &samplers, seed)?;
        ec.epochs
            .iter()
            .map(|&epoch| {
                let rate = score_epoch(ec, &pool, epoch)?;
                Ok(RateRow { seed, epoch, rate })
            })
            .collect()
    };
    let rows: Vec<Vec<RateRow>> = if ec.parallel {
        ec.seeds.par_iter().map(per_seed).collect::<Result<_>>()?
    } else {
        ec.seeds.iter().map(per_seed).collect::<Result<_>>()?
    };
    Ok(ExperimentTable::from_rows(rows.into_iter().flatten().collect()))
}

fn score_epoch(ec: &ExperimentConfig, pool: &SimulatedPool, epoch: usize) -> Result<f64> {
    let (paths, truth) = match ec.mode {
        ClusterMode::Offline => pool.offline(epoch)?,
        ClusterMode::Online => {
            let (snap, truth) = pool.online(epoch)?;
            (snap.paths, truth)
        }
    };
    let d = pairwise_matrix(ec, pool, &paths, &truth)?;
    let clustering: Clustering = match ec.mode {
        ClusterMode::Offline => offline_cluster(&d, ec.groups())?,
        ClusterMode::Online => online_cluster_matrix(&d, ec.groups(), &ec.beta)?,
    };
    misclassification_rate(&clustering, &truth)
}

fn pairwise_matrix(
    ec: &ExperimentConfig,
    pool: &SimulatedPool,
    paths: &[SamplePath<f64>],
    truth: &GroundTruth,
) -> Result<DissimMatrix<f64>> {
    let cfg = &ec.dissim;
    match ec.measure {
        Measure::Empirical => pairwise_table(paths.len(), ec.parallel, |i, j| d_star_hat(&paths[i], &paths[j], cfg)),
        Measure::Normalized => pairwise_table(paths.len(), ec.parallel, |i, j| {
            let (hi, hj) = (&pool.hurst[truth.membership[i]], &pool.hurst[truth.membership[j]]);
            d_tilde_star(&paths[i], &paths[j], hi, hj, cfg)
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_statistics() {
        let t = ExperimentTable::from_rows(vec![
            RateRow { seed: 2, epoch: 5, rate: 0.4 },
            RateRow { seed: 1, epoch: 5, rate: 0.2 },
            RateRow { seed: 1, epoch: 9, rate: 0.1 },
        ]);
        assert_eq!(t.rows[0].seed, 1);
        let s = t.summary();
        assert_eq!(s.len(), 2);
        assert!((s[0].mean_rate - 0.3).abs() < 1e-15);
        assert!((s[0].std_rate - 0.02f64.sqrt()).abs() < 1e-15);
        assert_eq!(s[1].std_rate, 0.0);
        assert_eq!(t.mean_at(9), Some(0.1));
    }
}
