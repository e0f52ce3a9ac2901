use rayon::prelude::*;

use crate::error::Result;
use crate::matrix::DissimMatrix;
use crate::process::SamplePath;
use crate::scalar::Scalar;

use super::{d_star_hat, DissimConfig};

/// Symmetric table with zero diagonal whose upper-triangle entries come from
/// `entry(i, j)`, i < j. Entries are computed independently, so the parallel
/// and serial results are bit-identical.
pub fn pairwise_table<T, F>(n: usize, parallel: bool, entry: F) -> Result<DissimMatrix<T>>
where
    T: Scalar,
    F: Fn(usize, usize) -> Result<T> + Sync,
{
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let values: Vec<T> = if parallel {
        pairs.par_iter().map(|&(i, j)| entry(i, j)).collect::<Result<_>>()?
    } else {
        pairs.iter().map(|&(i, j)| entry(i, j)).collect::<Result<_>>()?
    };
    let mut d = DissimMatrix::zeros(n);
    for (&(i, j), v) in pairs.iter().zip(values) {
        d[(i, j)] = v;
        d[(j, i)] = v;
    }
    Ok(d)
}

/// Pairwise `d_star_hat` over all paths, computed across the rayon pool.
pub fn dissimilarity_matrix<T: Scalar>(paths: &[SamplePath<T>], cfg: &DissimConfig) -> Result<DissimMatrix<T>> {
    pairwise_table(paths.len(), true, |i, j| d_star_hat(&paths[i], &paths[j], cfg))
}

pub fn dissimilarity_matrix_serial<T: Scalar>(paths: &[SamplePath<T>], cfg: &DissimConfig) -> Result<DissimMatrix<T>> {
    pairwise_table(paths.len(), false, |i, j| d_star_hat(&paths[i], &paths[j], cfg))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn paths() -> Vec<SamplePath<f64>> {
        (0..5)
            .map(|p| {
                let values = (0..12).map(|k| ((k * (p + 2)) as f64 * 0.7).sin() * (1.0 + p as f64)).collect();
                SamplePath::new(format!("p{p}"), values, 1.0, 1.0).unwrap()
            })
            .collect()
    }

    #[test]
    fn matches_pairwise_calls() {
        let ps = paths();
        let cfg = DissimConfig::default().with_log_star(true);
        let d = dissimilarity_matrix(&ps, &cfg).unwrap();
        for i in 0..ps.len() {
            assert_eq!(d[(i, i)], 0.0);
            for j in 0..ps.len() {
                if i != j {
                    assert_eq!(d[(i, j)], d_star_hat(&ps[i], &ps[j], &cfg).unwrap());
                }
            }
        }
        assert!(d.is_symmetric(0.0));
    }

    #[test]
    fn duplicates_give_zero_entries() {
        let mut ps = paths();
        ps.push(ps[1].clone());
        let d = dissimilarity_matrix(&ps, &DissimConfig::default()).unwrap();
        assert_eq!(d[(1, 5)], 0.0);
        assert!(d[(0, 5)] > 0.0);
    }

    #[test]
    fn parallel_equals_serial() {
        let ps = paths();
        let cfg = DissimConfig::default();
        assert_eq!(
            dissimilarity_matrix(&ps, &cfg).unwrap(),
            dissimilarity_matrix_serial(&ps, &cfg).unwrap()
        );
    }
}
