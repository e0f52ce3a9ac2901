use crate::error::{Error, Result};
use crate::hurst::HurstFunction;
use crate::process::SamplePath;
use crate::scalar::{pairwise_sum, Scalar};

use super::{d_hat, DissimConfig, IncrementPath};

/// The K + 1 increments `z[start+1] − z[start], …, z[start+K+1] − z[start+K]`
/// (0-based `start`).
pub fn localized_increments<T: Scalar>(z: &SamplePath<T>, start: usize, k: usize) -> Result<IncrementPath<T>> {
    if start + k + 1 >= z.len() {
        return Err(Error::InfeasibleWindow(format!(
            "window at {start} with K = {k} overruns path {} of length {}",
            z.id,
            z.len()
        )));
    }
    Ok(IncrementPath {
        values: z.values[start..=start + k + 1].windows(2).map(|w| w[1] - w[0]).collect(),
        parent_id: z.id.clone(),
        delta_t: z.delta_t,
    })
}

/// Average of `d_hat` over the first L localized increment windows.
pub fn d_star_hat<T: Scalar>(z1: &SamplePath<T>, z2: &SamplePath<T>, cfg: &DissimConfig) -> Result<T> {
    averaged(z1, z2, cfg, None)
}

/// Like [`d_star_hat`], with every window of path j divided by
/// Δt_j^{H_j(t)} where t is the window's anchor time.
pub fn d_tilde_star<T: Scalar>(
    z1: &SamplePath<T>,
    z2: &SamplePath<T>,
    h1: &HurstFunction<T>,
    h2: &HurstFunction<T>,
    cfg: &DissimConfig,
) -> Result<T> {
    averaged(z1, z2, cfg, Some((h1, h2)))
}

fn averaged<T: Scalar>(
    z1: &SamplePath<T>,
    z2: &SamplePath<T>,
    cfg: &DissimConfig,
    hurst: Option<(&HurstFunction<T>, &HurstFunction<T>)>,
) -> Result<T> {
    let n = z1.len().min(z2.len());
    let (k, l) = cfg.resolve_window(n)?;
    let normalize = |z: &SamplePath<T>, h: &HurstFunction<T>, start: usize, inc: &mut IncrementPath<T>| -> Result<()> {
        let scale = z.delta_t.powf(h.eval(z.time_at(start))?);
        inc.values.iter_mut().for_each(|v| *v = *v / scale);
        Ok(())
    };
    let mut per_window = Vec::with_capacity(l);
    for start in 0..l {
        let mut a = localized_increments(z1, start, k)?;
        let mut b = localized_increments(z2, start, k)?;
        if let Some((h1, h2)) = hurst {
            normalize(z1, h1, start, &mut a)?;
            normalize(z2, h2, start, &mut b)?;
        }
        per_window.push(d_hat(&a.values, &b.values, cfg)?);
    }
    Ok(pairwise_sum(&per_window) / T::count(l))
}
