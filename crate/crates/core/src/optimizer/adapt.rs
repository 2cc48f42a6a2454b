use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{cumulative_barrier_knots, fit_monotone_barrier, plan_parallelism, update_schedule};
use super::{BarrierEstimate, ParallelismPlan};
use crate::error::{Error, Result};
use crate::estimators::log_partition_ratio;
use crate::exploration::ExplorationSpec;
use crate::model::TemperedModel;
use crate::rng::{child_seed, Purpose};
use crate::schedule::AnnealingSchedule;
use crate::tempering::{PtSampler, RunOptions, RunOutput, Scheme};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdaptConfig {
    /// `N̄`.
    pub total_cores: usize,
    /// Tuning budget in scans.
    pub n_tune: u64,
    /// Scans per sampling copy after tuning.
    pub n_sample: u64,
    /// Scheme used while tuning; sampling always uses DEO.
    pub scheme: Scheme,
    pub seed: u64,
    /// Tuning chain count `N`; defaults to `N̄`.
    pub tuning_chains: Option<usize>,
    pub exploration: Option<ExplorationSpec>,
    pub options: RunOptions,
}

impl AdaptConfig {
    pub fn new(total_cores: usize, n_tune: u64, n_sample: u64, seed: u64) -> Self {
        Self {
            total_cores,
            n_tune,
            n_sample,
            scheme: Scheme::Deo,
            seed,
            tuning_chains: None,
            exploration: None,
            options: RunOptions::default(),
        }
    }
}

/// One tuning round.
#[derive(Clone, Debug)]
pub struct RoundRecord {
    /// Starts at 1.
    pub round: usize,
    pub n_scans: u64,
    /// Schedule the round ran with.
    pub schedule: AnnealingSchedule,
    pub rhat: Vec<f64>,
    pub acceptance: Vec<f64>,
    pub barrier: BarrierEstimate,
    /// Thermodynamic-integration estimate of `log 𝒵(1)/𝒵(0)` from this round.
    pub log_z: f64,
    pub round_trip_rate: f64,
}

#[derive(Clone, Debug)]
pub struct AdaptOutput {
    pub rounds: Vec<RoundRecord>,
    pub barrier: BarrierEstimate,
    pub plan: ParallelismPlan,
    /// Equi-barrier schedule with `N*` intervals used for sampling.
    pub schedule: AnnealingSchedule,
    /// One output per independent copy.
    pub sampling: Vec<RunOutput>,
}

impl AdaptOutput {
    pub fn lambda_hat(&self) -> f64 {
        self.barrier.global()
    }

    /// Schedule produced by the final tuning round, at the tuning chain count.
    pub fn tuned_schedule(&self) -> Result<AnnealingSchedule> {
        let last = self.rounds.last().expect("at least one round");
        update_schedule(&last.barrier, last.schedule.n_pairs())
    }

    /// Total round trips per scan over all copies.
    pub fn observed_tau(&self) -> f64 {
        self.sampling.iter().map(RunOutput::round_trip_rate).sum()
    }

    pub fn log_z(&self) -> f64 {
        self.rounds.last().expect("at least one round").log_z
    }
}

/// Doubling-round schedule adaptation followed by `k*` independent DEO copies.
///
/// Round `r` runs `2^{r−1}` scans for `r = 1..=⌊log₂ n_tune⌋`. States carry over
/// between rounds; statistics restart each round.
pub fn nrpt_adapt<M: TemperedModel>(model: &M, config: &AdaptConfig) -> Result<AdaptOutput> {
    if config.n_tune < 2 {
        return Err(Error::Config("the tuning budget must be at least 2 scans".into()));
    }
    if config.n_sample < 1 {
        return Err(Error::Config("the sampling budget must be at least 1 scan".into()));
    }
    if config.total_cores < 2 {
        return Err(Error::Config("at least two cores are required".into()));
    }
    let n = config.tuning_chains.unwrap_or(config.total_cores);
    let exploration = config
        .exploration
        .clone()
        .unwrap_or_else(|| model.default_exploration());
    let max_round = config.n_tune.ilog2() as usize;

    let mut sampler = PtSampler::new(
        model,
        AnnealingSchedule::uniform(n)?,
        config.scheme,
        exploration.clone(),
        config.seed,
    )?;
    let mut rounds = Vec::with_capacity(max_round);
    for round in 1..=max_round {
        let n_scans = 1u64 << (round - 1);
        let schedule = sampler.schedule().clone();
        let out = sampler.run(n_scans, config.options)?;
        let rhat = out.rejection.rhat()?;
        let knots = cumulative_barrier_knots(&rhat, &schedule)?;
        let barrier = fit_monotone_barrier(&knots)?;
        let log_z = log_partition_ratio(&out.energy, &schedule)?;
        sampler.set_schedule(update_schedule(&barrier, n)?)?;
        rounds.push(RoundRecord {
            round,
            n_scans,
            schedule,
            rhat,
            acceptance: out.rejection.acceptance_rates(),
            barrier,
            log_z,
            round_trip_rate: out.round_trip_rate(),
        });
    }

    let barrier = rounds.last().expect("at least one round").barrier.clone();
    let plan = plan_parallelism(barrier.global(), config.total_cores)?;
    let schedule = update_schedule(&barrier, plan.n_star)?;
    let sampling = (0..plan.k_star as u64)
        .into_par_iter()
        .map(|copy| {
            let mut copy_sampler = PtSampler::new(
                model,
                schedule.clone(),
                Scheme::Deo,
                exploration.clone(),
                child_seed(config.seed, Purpose::Replicate, copy),
            )?;
            copy_sampler.run(config.n_sample, config.options)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AdaptOutput {
        rounds,
        barrier,
        plan,
        schedule,
        sampling,
    })
}
