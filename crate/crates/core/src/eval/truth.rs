use std::collections::BTreeSet;

use itertools::Itertools;
use pathfinding::prelude::{kuhn_munkres, Matrix};

use crate::error::{Error, Result};
use crate::offline::Clustering;

/// Reference partition: `membership[i]` is the group of path i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundTruth {
    /// Number of non-empty groups.
    pub kappa: usize,
    pub membership: Vec<usize>,
}

impl GroundTruth {
    pub fn new(membership: Vec<usize>) -> Self {
        let kappa = membership.iter().collect::<BTreeSet<_>>().len();
        Self { kappa, membership }
    }

    /// `sizes[g]` consecutive paths in group g.
    pub fn from_group_sizes(sizes: &[usize]) -> Self {
        Self::new(sizes.iter().enumerate().flat_map(|(g, &s)| std::iter::repeat_n(g, s)).collect())
    }

    pub fn len(&self) -> usize {
        self.membership.len()
    }

    pub fn is_empty(&self) -> bool {
        self.membership.is_empty()
    }

    /// Sizes of the non-empty groups, in label order.
    pub fn group_sizes(&self) -> Vec<usize> {
        let labels: BTreeSet<usize> = self.membership.iter().copied().collect();
        labels
            .into_iter()
            .map(|g| self.membership.iter().filter(|&&m| m == g).count())
            .collect()
    }
}

/// Restriction to the first `n` paths; groups left empty no longer count.
pub fn ground_truth_restrict(g: &GroundTruth, n: usize) -> GroundTruth {
    GroundTruth::new(g.membership[..n.min(g.len())].to_vec())
}

/// Permutation-minimal share of misplaced paths.
///
/// Labels on either side are matched one-to-one; when the label counts
/// differ, unmatched labels count as errors.
pub fn misclassification_rate(c: &Clustering, g: &GroundTruth) -> Result<f64> {
    let n = c.labels.len();
    if n != g.len() {
        return Err(Error::IndexMismatch(n, g.len()));
    }
    if n == 0 {
        return Ok(0.0);
    }
    let rows = c.labels.iter().max().map_or(0, |&m| m + 1).max(c.kappa);
    let cols = g.membership.iter().max().map_or(0, |&m| m + 1);
    let size = rows.max(cols);
    let mut table = vec![vec![0i64; size]; size];
    for (&a, &b) in c.labels.iter().zip(&g.membership) {
        table[a][b] += 1;
    }
    let matched = if size <= 7 {
        (0..size)
            .permutations(size)
            .map(|perm| perm.iter().enumerate().map(|(r, &col)| table[r][col]).sum::<i64>())
            .max()
            .unwrap_or(0)
    } else {
        let weights = Matrix::from_rows(table).expect("square contingency table");
        kuhn_munkres(&weights).0
    };
    Ok((n as f64 - matched as f64) / n as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn clustering(labels: Vec<usize>, kappa: usize) -> Clustering {
        Clustering {
            kappa,
            centers: (0..kappa).collect(),
            labels,
        }
    }

    #[test]
    fn restriction_examples() {
        let g = GroundTruth::from_group_sizes(&[20; 5]);
        assert_eq!(ground_truth_restrict(&g, 100), g);
        let one = ground_truth_restrict(&g, 1);
        assert_eq!((one.kappa, one.group_sizes()), (1, vec![1]));
        let r = ground_truth_restrict(&g, 25);
        assert_eq!((r.kappa, r.group_sizes()), (2, vec![20, 5]));
    }

    #[test]
    fn relabelled_truth_scores_zero() {
        let g = GroundTruth::new(vec![0, 0, 1, 1, 2, 2]);
        let c = clustering(vec![2, 2, 0, 0, 1, 1], 3);
        assert_eq!(misclassification_rate(&c, &g).unwrap(), 0.0);
    }

    #[test]
    fn one_misplaced_of_ten() {
        let g = GroundTruth::from_group_sizes(&[5, 5]);
        let c = clustering(vec![1, 1, 1, 1, 0, 0, 0, 0, 0, 0], 2);
        assert!((misclassification_rate(&c, &g).unwrap() - 0.1).abs() < 1e-15);
    }

    #[test]
    fn single_cluster_against_five_groups() {
        let g = GroundTruth::from_group_sizes(&[20; 5]);
        let c = clustering(vec![0; 100], 5);
        assert!((misclassification_rate(&c, &g).unwrap() - 0.8).abs() < 1e-15);
    }

    #[test]
    fn large_kappa_uses_assignment_solver() {
        // 9 groups of 3; cluster labels rotated, one point misplaced.
        let g = GroundTruth::from_group_sizes(&[3; 9]);
        let mut labels: Vec<usize> = g.membership.iter().map(|&m| (m + 4) % 9).collect();
        labels[0] = (labels[0] + 1) % 9;
        let c = clustering(labels, 9);
        assert!((misclassification_rate(&c, &g).unwrap() - 1.0 / 27.0).abs() < 1e-15);
    }

    #[test]
    fn mismatched_index_sets() {
        let g = GroundTruth::from_group_sizes(&[2, 2]);
        let c = clustering(vec![0, 1, 0], 2);
        assert_eq!(misclassification_rate(&c, &g), Err(Error::IndexMismatch(3, 4)));
    }
}
