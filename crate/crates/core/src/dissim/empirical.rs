use crate::error::{Error, Result};
use crate::matrix::CovMatrix;
use crate::process::SamplePath;
use crate::scalar::{pairwise_sum, Scalar};

use super::{log_star, DissimConfig};

/// Consecutive differences of a sample path.
#[derive(Debug, Clone, PartialEq)]
pub struct IncrementPath<T> {
    pub values: Vec<T>,
    pub parent_id: String,
    pub delta_t: T,
}

impl<T: Scalar> IncrementPath<T> {
    pub fn from_path(z: &SamplePath<T>) -> Self {
        Self {
            values: z.values.windows(2).map(|w| w[1] - w[0]).collect(),
            parent_id: z.id.clone(),
            delta_t: z.delta_t,
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Empirical covariance ν of block length `m` starting at 0-based offset `start`:
/// the average of the outer products of every length-`m` window beginning at
/// `start, …, n − m`.
pub fn empirical_cov<T: Scalar>(x: &[T], start: usize, m: usize) -> Result<CovMatrix<T>> {
    let n = x.len();
    if m == 0 || start + m > n {
        return Err(Error::EmptyRange(format!(
            "block length {m} at offset {start} does not fit a series of length {n}"
        )));
    }
    let mut acc = CovMatrix::zeros(m);
    for i in start..=n - m {
        let w = &x[i..i + m];
        for a in 0..m {
            for b in 0..m {
                acc[(a, b)] = acc[(a, b)] + w[a] * w[b];
            }
        }
    }
    let div = T::count(n - m - start + 1);
    Ok(acc.map(|v| v / div))
}

/// Number of Frobenius evaluations one `d_hat` call performs on series of
/// common length `n` with block limit `m_n`: Σ_{m=1}^{m_n} (n − m + 1).
pub fn rho_count_closed_form(n: usize, m_n: usize) -> u64 {
    (1..=m_n.min(n)).map(|m| (n - m + 1) as u64).sum()
}

/// Empirical covariance-based dissimilarity between two increment series.
///
/// Both series are cut to their common length n; the block sizes run over
/// 1..=m_n and the window offsets over every admissible start.
pub fn d_hat<T: Scalar>(x1: &[T], x2: &[T], cfg: &DissimConfig) -> Result<T> {
    let n = x1.len().min(x2.len());
    if n == 0 {
        return Err(Error::InvalidArgument("d_hat needs non-empty series".into()));
    }
    let (x1, x2) = (&x1[..n], &x2[..n]);
    let m_n = cfg.block_limit(n);
    let w: Vec<T> = cfg.weights.table(n);
    let transform = |v: T| if cfg.use_log_star { log_star(v) } else { v };

    let mut terms = Vec::with_capacity(rho_count_closed_form(n, m_n) as usize);
    let mut block_terms = Vec::with_capacity(n);
    for m in 1..=m_n {
        let windows = n - m + 1;
        // Suffix sums of outer products: after adding window l the
        // accumulators hold Σ_{i ≥ l} outer(window i).
        let mut s1 = vec![T::zero(); m * m];
        let mut s2 = vec![T::zero(); m * m];
        block_terms.clear();
        for l in (0..windows).rev() {
            let (a, b) = (&x1[l..l + m], &x2[l..l + m]);
            for r in 0..m {
                for c in r..m {
                    s1[r * m + c] = s1[r * m + c] + a[r] * a[c];
                    s2[r * m + c] = s2[r * m + c] + b[r] * b[c];
                }
            }
            let div = T::count(windows - l);
            let mut sq = T::zero();
            for r in 0..m {
                let d = transform(s1[r * m + r] / div) - transform(s2[r * m + r] / div);
                sq = sq + d * d;
                for c in r + 1..m {
                    let d = transform(s1[r * m + c] / div) - transform(s2[r * m + c] / div);
                    sq = sq + T::lit(2.0) * d * d;
                }
            }
            block_terms.push(w[m] * w[l + 1] * sq.sqrt());
        }
        terms.extend(block_terms.iter().rev());
    }
    if let Some(counter) = &cfg.counter {
        counter.add(terms.len() as u64);
    }
    Ok(pairwise_sum(&terms))
}
