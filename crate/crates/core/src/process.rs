//! Exact-covariance simulation of fractional and multifractional Brownian
//! motion, plus the analytic covariance kernels used as oracles.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::hurst::HurstFunction;
use crate::matrix::CovMatrix;
use crate::scalar::Scalar;
use crate::special::gamma;

/// A discretely sampled path: `values[k]` is observed at `start_time + k · delta_t`.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplePath<T> {
    pub id: String,
    pub values: Vec<T>,
    pub delta_t: T,
    pub start_time: T,
}

impl<T: Scalar> SamplePath<T> {
    pub fn new(id: impl Into<String>, values: Vec<T>, delta_t: T, start_time: T) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InvalidArgument(format!(
                "a sample path needs at least 2 values, got {}",
                values.len()
            )));
        }
        if let Some(k) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument(format!("value {k} is not finite")));
        }
        if !(delta_t > T::zero() && delta_t.is_finite()) {
            return Err(Error::InvalidArgument("delta_t must be positive".into()));
        }
        if !(start_time >= T::zero() && start_time.is_finite()) {
            return Err(Error::InvalidArgument("start_time must be non-negative".into()));
        }
        Ok(Self {
            id: id.into(),
            values,
            delta_t,
            start_time,
        })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Observation time of `values[k]`.
    pub fn time_at(&self, k: usize) -> T {
        self.start_time + T::count(k) * self.delta_t
    }

    /// The first `n` observations.
    pub fn prefix(&self, n: usize) -> Result<Self> {
        if n > self.len() {
            return Err(Error::InvalidArgument(format!(
                "prefix of length {n} requested from path of length {}",
                self.len()
            )));
        }
        Self::new(self.id.clone(), self.values[..n].to_vec(), self.delta_t, self.start_time)
    }
}

/// Normalising factor D(a, b) of the mBm covariance, evaluated at Hurst values.
pub fn d_factor<T: Scalar>(a: T, b: T) -> Result<T> {
    let err = || Error::NonFiniteGamma(a.as_f64(), b.as_f64());
    if !(a > T::zero() && a < T::one() && b > T::zero() && b < T::one()) {
        return Err(err());
    }
    let pi = T::lit(std::f64::consts::PI);
    let two = T::lit(2.0);
    let num = gamma(two * a + T::one()) * gamma(two * b + T::one()) * (pi * a).sin() * (pi * b).sin();
    let den = two * gamma(a + b + T::one()) * (pi * (a + b) / two).sin();
    let d = num.sqrt() / den;
    if d.is_finite() {
        Ok(d)
    } else {
        Err(err())
    }
}

/// Covariance of an mBm with Hurst function `f` at times `s` and `t`.
pub fn mbm_cov<T: Scalar>(f: &HurstFunction<T>, s: T, t: T) -> Result<T> {
    let (hs, ht) = (f.eval(s)?, f.eval(t)?);
    let exp = hs + ht;
    let d = d_factor(ht, hs)?;
    Ok(d * (t.powf(exp) + s.powf(exp) - (t - s).abs().powf(exp)))
}

/// Population covariance matrix of an mBm sampled at strictly increasing `times`.
pub fn build_cov_matrix<T: Scalar>(f: &HurstFunction<T>, times: &[T]) -> Result<CovMatrix<T>> {
    if times.is_empty() {
        return Err(Error::InvalidArgument("empty time grid".into()));
    }
    if times.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidArgument("times must be strictly increasing".into()));
    }
    let mut failure = None;
    let m = CovMatrix::from_upper(times.len(), |i, j| {
        mbm_cov(f, times[i], times[j]).unwrap_or_else(|e| {
            failure.get_or_insert(e);
            T::nan()
        })
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(m),
    }
}

/// Covariance between unit-spaced increments `i` and `j` of an fBm with
/// index `h`, unit variance `var1` and mesh `delta`.
pub fn fbm_increment_cov<T: Scalar>(h: T, var1: T, i: usize, j: usize, delta: T) -> T {
    let lag = T::count(i.abs_diff(j));
    let two_h = T::lit(2.0) * h;
    let two = T::lit(2.0);
    var1 * delta.powf(two_h) / two
        * ((lag - T::one()).abs().powf(two_h) + (lag + T::one()).powf(two_h) - two * lag.powf(two_h))
}

/// `m × m` covariance of consecutive fBm increments.
pub fn fbm_increment_cov_matrix<T: Scalar>(h: T, var1: T, m: usize, delta: T) -> CovMatrix<T> {
    CovMatrix::from_upper(m, |i, j| fbm_increment_cov(h, var1, i, j, delta))
}

/// Independent random stream for path `stream` of experiment `seed`.
pub fn path_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Draws zero-mean Gaussian vectors with a fixed covariance through its
/// Cholesky factor.
#[derive(Debug, Clone)]
pub struct GaussianSampler<T> {
    factor: CovMatrix<T>,
    jitter: f64,
}

impl<T: Scalar> GaussianSampler<T> {
    /// Relative diagonal jitter tried in order when plain factorization fails.
    pub const JITTER_LADDER: [f64; 7] = [1e-14, 1e-13, 1e-12, 1e-11, 1e-10, 1e-9, 1e-8];

    pub fn new(cov: &CovMatrix<T>) -> Result<Self> {
        if let Some(factor) = cov.cholesky() {
            return Ok(Self { factor, jitter: 0.0 });
        }
        let n = cov.dim();
        let scale = (0..n).map(|i| cov[(i, i)].abs()).fold(T::zero(), T::max);
        let scale = if scale > T::zero() { scale } else { T::one() };
        for &eps in &Self::JITTER_LADDER {
            let mut jittered = cov.clone();
            let add = T::lit(eps) * scale;
            for i in 0..n {
                jittered[(i, i)] = jittered[(i, i)] + add;
            }
            if let Some(factor) = jittered.cholesky() {
                return Ok(Self { factor, jitter: eps });
            }
        }
        Err(Error::Factorization(Self::JITTER_LADDER[Self::JITTER_LADDER.len() - 1]))
    }

    pub fn dim(&self) -> usize {
        self.factor.dim()
    }

    /// Relative jitter that was needed (0 when none).
    pub fn jitter(&self) -> f64 {
        self.jitter
    }

    pub fn sample(&self, seed: u64, stream: u64) -> Vec<T> {
        let mut rng = path_rng(seed, stream);
        self.sample_with(&mut rng)
    }

    pub fn sample_with<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Vec<T> {
        let n = self.dim();
        let z: Vec<T> = (0..n)
            .map(|_| {
                let x: f64 = StandardNormal.sample(rng);
                T::lit(x)
            })
            .collect();
        (0..n)
            .map(|i| {
                let row = self.factor.row(i);
                row[..=i].iter().zip(&z).map(|(&l, &zk)| l * zk).sum()
            })
            .collect()
    }
}

/// Sampler for an mBm observed at `delta_t, 2·delta_t, …, n·delta_t`.
pub fn mbm_sampler<T: Scalar>(f: &HurstFunction<T>, n: usize, delta_t: T) -> Result<GaussianSampler<T>> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("need n >= 2, got {n}")));
    }
    if !(delta_t > T::zero()) {
        return Err(Error::InvalidArgument("delta_t must be positive".into()));
    }
    let times: Vec<T> = (1..=n).map(|i| T::count(i) * delta_t).collect();
    GaussianSampler::new(&build_cov_matrix(f, &times)?)
}

/// One mBm sample path on the grid `i · delta_t`, i = 1..=n.
pub fn sample_path<T: Scalar>(f: &HurstFunction<T>, n: usize, delta_t: T, seed: u64) -> Result<SamplePath<T>> {
    let sampler = mbm_sampler(f, n, delta_t)?;
    SamplePath::new(format!("mbm-{seed}"), sampler.sample(seed, 0), delta_t, delta_t)
}

/// Sampler for `n` consecutive unit-mesh fBm increments (fractional Gaussian noise).
pub fn fgn_sampler<T: Scalar>(h: T, var1: T, n: usize) -> Result<GaussianSampler<T>> {
    if !(h > T::zero() && h < T::one()) {
        return Err(Error::HurstRange(h.as_f64()));
    }
    GaussianSampler::new(&fbm_increment_cov_matrix(h, var1, n, T::one()))
}
