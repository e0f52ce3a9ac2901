//! Offline clustering: farthest-first centre selection followed by
//! sequential nearest-cluster assignment.

use crate::error::{Error, Result};
use crate::matrix::DissimMatrix;
use crate::scalar::Scalar;

/// A partition of `0..labels.len()` into `kappa` clusters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clustering {
    pub kappa: usize,
    /// `labels[i]` is the 0-based cluster of point i.
    pub labels: Vec<usize>,
    /// One representative point per cluster, in cluster order.
    pub centers: Vec<usize>,
}

impl Clustering {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn members(&self, k: usize) -> Vec<usize> {
        (0..self.labels.len()).filter(|&i| self.labels[i] == k).collect()
    }
}

/// Clusters all points of `d` into `kappa` groups.
pub fn offline_cluster<T: Scalar>(d: &DissimMatrix<T>, kappa: usize) -> Result<Clustering> {
    if let Some((i, j)) = first_non_finite(d) {
        return Err(Error::NonFinite(i, j));
    }
    offline_cluster_prefix(d, d.dim(), kappa)
}

pub(crate) fn first_non_finite<T: Scalar>(d: &DissimMatrix<T>) -> Option<(usize, usize)> {
    let n = d.dim();
    (0..n * n).find(|&k| !d.as_slice()[k].is_finite()).map(|k| (k / n, k % n))
}

/// Runs the offline algorithm on the first `n` points of `d`. Ties in every
/// argmax/argmin go to the lowest index.
pub(crate) fn offline_cluster_prefix<T: Scalar>(d: &DissimMatrix<T>, n: usize, kappa: usize) -> Result<Clustering> {
    if kappa == 0 || kappa > n {
        return Err(Error::TooManyClusters { kappa, n });
    }
    let mut centers = Vec::with_capacity(kappa);
    if kappa == 1 {
        centers.push(0);
    } else {
        let (mut best, mut pair) = (T::neg_infinity(), (0, 1));
        for i in 0..n {
            for j in i + 1..n {
                if d[(i, j)] > best {
                    best = d[(i, j)];
                    pair = (i, j);
                }
            }
        }
        centers.extend([pair.0, pair.1]);
        // nearest[i] = min distance from i to the chosen centres
        let mut nearest: Vec<T> = (0..n).map(|i| d[(i, pair.0)].min(d[(i, pair.1)])).collect();
        while centers.len() < kappa {
            let mut pick = None;
            let mut best = T::neg_infinity();
            for i in (0..n).filter(|i| !centers.contains(i)) {
                if nearest[i] > best {
                    best = nearest[i];
                    pick = Some(i);
                }
            }
            let c = pick.expect("kappa <= n leaves a candidate");
            centers.push(c);
            for (i, v) in nearest.iter_mut().enumerate() {
                *v = v.min(d[(i, c)]);
            }
        }
    }

    const UNASSIGNED: usize = usize::MAX;
    let mut labels = vec![UNASSIGNED; n];
    let mut members: Vec<Vec<usize>> = centers.iter().map(|&c| vec![c]).collect();
    for (k, &c) in centers.iter().enumerate() {
        labels[c] = k;
    }
    for i in 0..n {
        if labels[i] != UNASSIGNED {
            continue;
        }
        let mut best = (T::infinity(), 0);
        for (k, group) in members.iter().enumerate() {
            let link = group.iter().map(|&j| d[(i, j)]).fold(T::infinity(), T::min);
            if link < best.0 {
                best = (link, k);
            }
        }
        labels[i] = best.1;
        members[best.1].push(i);
    }
    Ok(Clustering { kappa, labels, centers })
}
