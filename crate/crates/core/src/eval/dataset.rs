use crate::dissim::{DissimConfig, WeightRule};
use crate::error::{Error, Result};
use crate::hurst::HurstFunction;
use crate::online::OnlineSnapshot;
use crate::process::{mbm_sampler, GaussianSampler, SamplePath};

use super::truth::GroundTruth;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HurstCase {
    /// H(t) = 0.5 + h·t/Q
    Monotonic,
    /// H(t) = 0.5 + h·sin(πt/Q)
    Periodic,
    /// H ≡ 0.5 + h; each group is a plain fBm.
    Constant,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClusterMode {
    Offline,
    Online,
}

/// Which pairwise measure the experiment clusters with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Measure {
    /// Raw localized increments.
    Empirical,
    /// Increments divided by Δt^{H(t)} using the known Hurst functions.
    Normalized,
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub case: HurstCase,
    /// One group per value.
    pub h_values: Vec<f64>,
    /// Q: the Hurst function clock spans [0, Q] over the whole path.
    pub horizon: f64,
    /// Simulated paths per group (the pool the online schedule draws from).
    pub paths_per_group: usize,
    /// Full simulated length.
    pub path_length: usize,
    pub seeds: Vec<u64>,
    pub mode: ClusterMode,
    pub dissim: DissimConfig,
    /// Prefix weights of the online vote.
    pub beta: WeightRule,
    pub epochs: Vec<usize>,
    /// Sampling mesh; `None` means 1 / path_length (paths on the unit interval).
    pub mesh: Option<f64>,
    pub measure: Measure,
    pub parallel: bool,
}

/// Offline schedule: the first 3t + 5 observations.
pub fn offline_length(t: usize) -> usize {
    3 * t + 5
}

/// Online schedule: paths visible per group at epoch t.
pub fn online_group_size(t: usize) -> usize {
    6 + (t.saturating_sub(1)) / 10
}

/// Online schedule: observations of the l-th path (1-based) of a group at epoch t.
pub fn online_length(t: usize, l: usize) -> usize {
    let late = l.saturating_sub(6);
    3 * t.saturating_sub(late) + 5
}

impl ExperimentConfig {
    fn case_h_values(case: HurstCase) -> Vec<f64> {
        match case {
            HurstCase::Monotonic => vec![-0.4, -0.2, 0.0, 0.2, 0.4],
            HurstCase::Periodic => vec![0.4, 0.2, 0.0, -0.2, -0.4],
            HurstCase::Constant => vec![-0.3, 0.0, 0.3],
        }
    }

    /// Full-size protocol: 20 paths per group of length 305, epochs 1..=100.
    pub fn full_scale(case: HurstCase, mode: ClusterMode) -> Self {
        Self {
            case,
            h_values: Self::case_h_values(case),
            horizon: 100.0,
            paths_per_group: 20,
            path_length: 305,
            seeds: (0..10).collect(),
            mode,
            dissim: DissimConfig::default().with_log_star(true),
            beta: WeightRule::InversePairSquare,
            epochs: (1..=100).collect(),
            mesh: None,
            measure: Measure::Empirical,
            parallel: true,
        }
    }

    /// Reduced protocol that runs in minutes: 5 paths per group offline
    /// (the online schedule needs 15), four scored epochs.
    pub fn desk(case: HurstCase, mode: ClusterMode) -> Self {
        let base = Self::full_scale(case, mode);
        match mode {
            ClusterMode::Offline => Self {
                paths_per_group: 5,
                epochs: vec![5, 20, 50, 100],
                ..base
            },
            ClusterMode::Online => Self {
                paths_per_group: 15,
                seeds: (0..5).collect(),
                epochs: vec![10, 40, 70, 100],
                ..base
            },
        }
    }

    pub fn groups(&self) -> usize {
        self.h_values.len()
    }

    pub fn mesh(&self) -> f64 {
        self.mesh.unwrap_or(1.0 / self.path_length as f64)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidArgument(msg));
        if self.h_values.is_empty() {
            return bad("at least one group is required".into());
        }
        for (i, a) in self.h_values.iter().enumerate() {
            if self.h_values[i + 1..].contains(a) {
                return bad(format!("h value {a} is repeated"));
            }
        }
        if self.seeds.is_empty() {
            return bad("the seed list is empty".into());
        }
        if self.epochs.is_empty() {
            return bad("no epochs to score".into());
        }
        if self.paths_per_group == 0 || self.path_length < 2 || !(self.horizon > 0.0) {
            return bad("paths_per_group, path_length and horizon must be positive".into());
        }
        if !(self.mesh() > 0.0) {
            return bad("mesh must be positive".into());
        }
        for &t in &self.epochs {
            self.check_epoch(t)?;
        }
        Ok(())
    }

    fn check_epoch(&self, t: usize) -> Result<()> {
        let infeasible = |msg: String| Err(Error::InfeasibleSchedule(msg));
        if t == 0 {
            return infeasible("epochs start at 1".into());
        }
        if offline_length(t) > self.path_length {
            return infeasible(format!(
                "epoch {t} needs {} observations, paths have {}",
                offline_length(t),
                self.path_length
            ));
        }
        if self.mode == ClusterMode::Online && online_group_size(t) > self.paths_per_group {
            return infeasible(format!(
                "epoch {t} needs {} paths per group, pool has {}",
                online_group_size(t),
                self.paths_per_group
            ));
        }
        Ok(())
    }

    /// Hurst function of group `g`, tabulated on the sampling grid.
    pub fn group_hurst(&self, g: usize) -> Result<HurstFunction<f64>> {
        let h = self.h_values[g];
        let f = match self.case {
            HurstCase::Monotonic => HurstFunction::monotonic(h, self.horizon),
            HurstCase::Periodic => HurstFunction::periodic(h, self.horizon),
            HurstCase::Constant => HurstFunction::Constant(0.5 + h),
        };
        let n = self.path_length;
        let mesh = self.mesh();
        let span = mesh * n as f64;
        f.tabulate(mesh, n, |t| (self.horizon * t / span).min(self.horizon))
    }

    /// One covariance factorization per group; independent of the seed.
    pub fn samplers(&self) -> Result<Vec<GaussianSampler<f64>>> {
        (0..self.groups())
            .map(|g| mbm_sampler(&self.group_hurst(g)?, self.path_length, self.mesh()))
            .collect()
    }

    pub fn simulate(&self, seed: u64) -> Result<SimulatedPool> {
        SimulatedPool::simulate(self, &self.samplers()?, seed)
    }
}

/// Full-length simulations for one seed; every epoch's data is a
/// truncation of these.
#[derive(Debug, Clone)]
pub struct SimulatedPool {
    /// `groups[g][p]`
    pub groups: Vec<Vec<SamplePath<f64>>>,
    pub hurst: Vec<HurstFunction<f64>>,
}

impl SimulatedPool {
    pub fn simulate(ec: &ExperimentConfig, samplers: &[GaussianSampler<f64>], seed: u64) -> Result<Self> {
        let mesh = ec.mesh();
        let groups = samplers
            .iter()
            .enumerate()
            .map(|(g, sampler)| {
                (0..ec.paths_per_group)
                    .map(|p| {
                        let stream = (g * ec.paths_per_group + p) as u64;
                        SamplePath::new(format!("g{g}-p{p}"), sampler.sample(seed, stream), mesh, mesh)
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let hurst = (0..ec.groups()).map(|g| ec.group_hurst(g)).collect::<Result<_>>()?;
        Ok(Self { groups, hurst })
    }

    /// Every path cut to 3t + 5 observations, group by group.
    pub fn offline(&self, t: usize) -> Result<(Vec<SamplePath<f64>>, GroundTruth)> {
        let n = offline_length(t);
        let mut paths = Vec::new();
        let mut membership = Vec::new();
        for (g, group) in self.groups.iter().enumerate() {
            for p in group {
                if n > p.len() {
                    return Err(Error::InfeasibleSchedule(format!("epoch {t} needs {n} observations")));
                }
                paths.push(p.prefix(n)?);
                membership.push(g);
            }
        }
        Ok((paths, GroundTruth::new(membership)))
    }

    /// Online snapshot: path l of each group arrives once the schedule
    /// reaches it; arrival order interleaves groups within each l.
    pub fn online(&self, t: usize) -> Result<(OnlineSnapshot<f64>, GroundTruth)> {
        let visible = online_group_size(t);
        let mut paths = Vec::new();
        let mut membership = Vec::new();
        for l in 1..=visible {
            for (g, group) in self.groups.iter().enumerate() {
                let p = group.get(l - 1).ok_or_else(|| {
                    Error::InfeasibleSchedule(format!("epoch {t} needs {visible} paths per group"))
                })?;
                let n = online_length(t, l);
                if n > p.len() {
                    return Err(Error::InfeasibleSchedule(format!("epoch {t} needs {n} observations")));
                }
                paths.push(p.prefix(n)?);
                membership.push(g);
            }
        }
        Ok((OnlineSnapshot { epoch: t, paths }, GroundTruth::new(membership)))
    }
}

/// Offline data of one seed at epoch `t`.
pub fn build_offline_dataset(ec: &ExperimentConfig, seed: u64, t: usize) -> Result<(Vec<SamplePath<f64>>, GroundTruth)> {
    ec.check_epoch(t)?;
    ec.simulate(seed)?.offline(t)
}

/// Online snapshot of one seed at epoch `t`.
pub fn build_online_dataset(ec: &ExperimentConfig, seed: u64, t: usize) -> Result<(OnlineSnapshot<f64>, GroundTruth)> {
    let ec = ExperimentConfig {
        mode: ClusterMode::Online,
        ..ec.clone()
    };
    ec.check_epoch(t)?;
    ec.simulate(seed)?.online(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schedules() {
        assert_eq!(offline_length(1), 8);
        assert_eq!(offline_length(100), 305);
        assert_eq!(online_group_size(1), 6);
        assert_eq!(online_group_size(10), 6);
        assert_eq!(online_group_size(11), 7);
        assert_eq!(online_group_size(100), 15);
        assert_eq!(online_length(1, 3), 8);
        assert_eq!(online_length(11, 7), 35);
        assert_eq!(online_length(11, 6), 38);
        assert_eq!(online_length(100, 15), 278);
    }

    fn small(mode: ClusterMode) -> ExperimentConfig {
        ExperimentConfig {
            path_length: 38,
            paths_per_group: 7,
            epochs: vec![1, 11],
            ..ExperimentConfig::desk(HurstCase::Monotonic, mode)
        }
    }

    #[test]
    fn offline_dataset_shapes() {
        let ec = ExperimentConfig::desk(HurstCase::Monotonic, ClusterMode::Offline);
        let (paths, truth) = build_offline_dataset(&ec, 3, 1).unwrap();
        assert_eq!(paths.len(), 25);
        assert!(paths.iter().all(|p| p.len() == 8));
        assert_eq!(truth.group_sizes(), vec![5; 5]);
        let (full, _) = build_offline_dataset(&ec, 3, 100).unwrap();
        assert!(full.iter().all(|p| p.len() == 305));
        assert!(build_offline_dataset(&ec, 3, 101).is_err());
    }

    #[test]
    fn online_dataset_shapes() {
        let ec = small(ClusterMode::Online);
        let (snap, truth) = build_online_dataset(&ec, 1, 1).unwrap();
        assert_eq!(snap.paths.len(), 30);
        assert!(snap.paths.iter().all(|p| p.len() == 8));
        assert_eq!(truth.group_sizes(), vec![6; 5]);
        let (snap, truth) = build_online_dataset(&ec, 1, 11).unwrap();
        assert_eq!(snap.paths.len(), 35);
        assert_eq!(truth.group_sizes(), vec![7; 5]);
        assert!(snap.paths[..30].iter().all(|p| p.len() == 38));
        assert!(snap.paths[30..].iter().all(|p| p.len() == 35));
        // arrival order interleaves the groups
        assert_eq!(&truth.membership[..6], &[0, 1, 2, 3, 4, 0]);
    }

    #[test]
    fn epochs_extend_earlier_epochs() {
        let ec = small(ClusterMode::Online);
        let pool = ec.simulate(9).unwrap();
        for t in 2..=11 {
            let (prev, _) = pool.offline(t - 1).unwrap();
            let (cur, _) = pool.offline(t).unwrap();
            for (a, b) in prev.iter().zip(&cur) {
                assert!(a.len() < b.len());
                assert_eq!(a.values[..], b.values[..a.len()]);
            }
            let (prev, _) = pool.online(t - 1).unwrap();
            let (cur, _) = pool.online(t).unwrap();
            assert!(prev.paths.len() <= cur.paths.len());
            for (a, b) in prev.paths.iter().zip(&cur.paths) {
                assert_eq!(a.id, b.id);
                assert_eq!(a.values[..], b.values[..a.len()]);
            }
        }
    }

    #[test]
    fn validation() {
        let mut ec = ExperimentConfig::desk(HurstCase::Periodic, ClusterMode::Offline);
        assert!(ec.validate().is_ok());
        ec.seeds.clear();
        assert!(ec.validate().is_err());
        let mut ec = ExperimentConfig::desk(HurstCase::Periodic, ClusterMode::Online);
        ec.epochs = vec![100];
        ec.paths_per_group = 14;
        assert!(matches!(ec.validate(), Err(Error::InfeasibleSchedule(_))));
        let mut ec = ExperimentConfig::desk(HurstCase::Periodic, ClusterMode::Offline);
        ec.h_values = vec![0.1, 0.1];
        assert!(ec.validate().is_err());
    }

    #[test]
    fn group_hurst_spans_the_horizon() {
        let ec = ExperimentConfig::desk(HurstCase::Monotonic, ClusterMode::Offline);
        let h = ec.group_hurst(4).unwrap();
        assert!((h.eval(ec.mesh() * 305.0).unwrap() - 0.9).abs() < 1e-12);
        assert!((h.eval(0.0).unwrap() - 0.5).abs() < 1e-12);
        let h = ec.group_hurst(0).unwrap();
        assert!((h.eval(ec.mesh() * 305.0).unwrap() - 0.1).abs() < 1e-12);
    }
}
