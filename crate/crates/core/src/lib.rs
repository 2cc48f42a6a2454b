//! Non-reversible parallel tempering.
//!
//! The crate provides a replica-exchange sampler with deterministic (DEO) and
//! stochastic (SEO) even/odd communication, an iterative schedule optimizer
//! driven by swap rejection statistics, a small set of models with closed-form
//! communication barriers, and reference computations for the index process
//! and its scaling limits.
//!
//! ```
//! use nrpt::{run_chain, AnnealingSchedule, ChainConfig, GaussianModel, Scheme};
//!
//! let model = GaussianModel::new(1, 1.0, 0.5).unwrap();
//! let schedule = AnnealingSchedule::uniform(10).unwrap();
//! let out = run_chain(&model, &schedule, &ChainConfig::new(Scheme::Deo, 2_000, 7)).unwrap();
//! let total_rejection: f64 = out.rejection.rhat().unwrap().iter().sum();
//! assert!(total_rejection > 0.2 && total_rejection < 0.7);
//! ```

pub mod error;
pub mod estimators;
pub mod exploration;
pub mod model;
pub mod optimizer;
pub mod rng;
pub mod schedule;
pub mod tempering;
pub mod theory;

pub use error::{Error, Result};
pub use estimators::{ess_batch_means, log_partition_ratio, observed_round_trip_rate, EnergySummaries, EssEstimate};
pub use exploration::{ExplorationKind, ExplorationSpec};
pub use model::{
    AnalyticBarrier, DiscreteMultimodal, FlatLikelihood, GaussianMixturePosterior, GaussianModel, IsingModel,
    SymmetricBimodal, TemperedModel,
};
pub use optimizer::{
    cumulative_barrier_knots, fit_monotone_barrier, nrpt_adapt, plan_parallelism, update_schedule, AdaptConfig,
    AdaptOutput, BarrierEstimate, ParallelismPlan, RejectionStats, RoundRecord,
};
pub use schedule::AnnealingSchedule;
pub use tempering::{
    communication_scan, pt_scan, run_chain, swap_accept_prob, ChainConfig, Communicator, IndexProcessState,
    Parity, PtSampler, ReplicaEnsemble, RoundTripLedger, RunOptions, RunOutput, ScanRecord, Scheme,
};
