//! Online clustering: candidate centres from every prefix of the arrival
//! order, combined by a separation-weighted vote.

use crate::dissim::{dissimilarity_matrix, DissimConfig, WeightRule};
use crate::error::{Error, Result};
use crate::matrix::DissimMatrix;
use crate::offline::{first_non_finite, offline_cluster_prefix, Clustering};
use crate::process::SamplePath;
use crate::scalar::Scalar;

/// All paths observed at epoch `epoch`, in arrival order.
#[derive(Debug, Clone, PartialEq)]
pub struct OnlineSnapshot<T> {
    pub epoch: usize,
    pub paths: Vec<SamplePath<T>>,
}

/// Clusters one snapshot. The dissimilarity matrix is computed once and
/// shared by every prefix run.
pub fn online_cluster<T: Scalar>(
    snapshot: &OnlineSnapshot<T>,
    kappa: usize,
    beta: &WeightRule,
    cfg: &DissimConfig,
) -> Result<Clustering> {
    if kappa == 0 || kappa > snapshot.paths.len() {
        return Err(Error::TooManyClusters {
            kappa,
            n: snapshot.paths.len(),
        });
    }
    let d = dissimilarity_matrix(&snapshot.paths, cfg)?;
    online_cluster_matrix(&d, kappa, beta)
}

/// Online vote over a precomputed dissimilarity matrix whose index order is
/// the arrival order.
///
/// For each prefix size j = κ..=N the offline algorithm yields κ candidate
/// centres (the smallest index of each cluster, sorted). Prefix j carries
/// weight β_j γ_j, γ_j being the smallest distance between its candidates,
/// and each point joins the cluster k minimising Σ_j β_j γ_j d(i, c_k^j) / η.
///
/// When every γ_j vanishes the vote is undefined and points go to the
/// nearest candidate of prefix j = κ.
pub fn online_cluster_matrix<T: Scalar>(d: &DissimMatrix<T>, kappa: usize, beta: &WeightRule) -> Result<Clustering> {
    let n = d.dim();
    if kappa == 0 || kappa > n {
        return Err(Error::TooManyClusters { kappa, n });
    }
    if let Some((i, j)) = first_non_finite(d) {
        return Err(Error::NonFinite(i, j));
    }

    let mut candidates: Vec<Vec<usize>> = Vec::with_capacity(n - kappa + 1);
    let mut vote_weights: Vec<T> = Vec::with_capacity(n - kappa + 1);
    for j in kappa..=n {
        let prefix = offline_cluster_prefix(d, j, kappa)?;
        let mut centers: Vec<usize> = (0..kappa)
            .map(|k| prefix.labels.iter().position(|&l| l == k).expect("clusters are non-empty"))
            .collect();
        centers.sort_unstable();
        let mut gamma = T::infinity();
        for (a, &ca) in centers.iter().enumerate() {
            for &cb in &centers[a + 1..] {
                gamma = gamma.min(d[(ca, cb)]);
            }
        }
        if kappa == 1 {
            gamma = T::zero();
        }
        vote_weights.push(T::lit(beta.weight(j)) * gamma);
        candidates.push(centers);
    }
    let eta = vote_weights.iter().fold(T::zero(), |acc, &w| acc + w);

    let labels = if eta > T::zero() {
        (0..n)
            .map(|i| {
                argmin((0..kappa).map(|k| {
                    let score = candidates
                        .iter()
                        .zip(&vote_weights)
                        .fold(T::zero(), |acc, (c, &w)| acc + w * d[(i, c[k])]);
                    score / eta
                }))
            })
            .collect()
    } else {
        let first = &candidates[0];
        (0..n).map(|i| argmin(first.iter().map(|&c| d[(i, c)]))).collect()
    };
    let centers = candidates.last().cloned().expect("at least one prefix");
    Ok(Clustering { kappa, labels, centers })
}

fn argmin<T: Scalar>(scores: impl Iterator<Item = T>) -> usize {
    let mut best = (T::infinity(), 0);
    for (k, s) in scores.enumerate() {
        if s < best.0 {
            best = (s, k);
        }
    }
    best.1
}
