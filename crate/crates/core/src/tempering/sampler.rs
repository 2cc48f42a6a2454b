use serde::{Deserialize, Serialize};

use super::{
    advance_index_process, pt_scan, Communicator, IndexProcessState, ReplicaEnsemble, RoundTripLedger,
    Scheme,
};
use crate::error::{Error, Result};
use crate::estimators::EnergySummaries;
use crate::exploration::ExplorationSpec;
use crate::model::TemperedModel;
use crate::optimizer::RejectionStats;
use crate::rng::{streams, Purpose, StreamRng};
use crate::schedule::AnnealingSchedule;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct RunOptions {
    /// Accumulate `1 − α` for every pair each scan rather than only proposed pairs.
    pub all_pair_statistics: bool,
    /// Keep the target-chain coordinates after every scan.
    pub record_samples: bool,
    pub trace_index: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            all_pair_statistics: true,
            record_samples: false,
            trace_index: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChainConfig {
    pub scheme: Scheme,
    pub n_scans: u64,
    pub seed: u64,
    /// `None` uses the model's default kernel.
    pub exploration: Option<ExplorationSpec>,
    pub options: RunOptions,
}

impl ChainConfig {
    pub fn new(scheme: Scheme, n_scans: u64, seed: u64) -> Self {
        Self {
            scheme,
            n_scans,
            seed,
            exploration: None,
            options: RunOptions::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexTraceRow {
    pub scan: u64,
    pub machine: usize,
    pub index: usize,
    pub epsilon: i8,
}

#[derive(Clone, Debug)]
pub struct RunOutput {
    /// Scan count of the ensemble when the run started.
    pub start_scan: u64,
    pub n_scans: u64,
    pub rejection: RejectionStats,
    pub energy: EnergySummaries,
    pub ledger: RoundTripLedger,
    /// Target-chain coordinates after each scan, when requested.
    pub samples: Vec<Vec<f64>>,
    /// `(I, ε)` of every machine at the start and after each scan, when requested.
    pub index_trace: Vec<IndexTraceRow>,
}

impl RunOutput {
    /// Round trips per scan, summed over machines.
    pub fn round_trip_rate(&self) -> f64 {
        self.ledger.total_round_trips() as f64 / self.n_scans as f64
    }
}

/// A persistent PT run: ensemble, random streams and index process survive
/// across calls to [`PtSampler::run`] and schedule updates.
pub struct PtSampler<'m, M: TemperedModel> {
    model: &'m M,
    schedule: AnnealingSchedule,
    exploration: ExplorationSpec,
    ensemble: ReplicaEnsemble<M::State>,
    communicator: Communicator,
    exploration_streams: Vec<StreamRng>,
    ips: IndexProcessState,
}

impl<'m, M: TemperedModel> PtSampler<'m, M> {
    pub fn new(
        model: &'m M,
        schedule: AnnealingSchedule,
        scheme: Scheme,
        exploration: ExplorationSpec,
        seed: u64,
    ) -> Result<Self> {
        exploration.check_model(model, &schedule)?;
        let n = schedule.len();
        let ensemble = ReplicaEnsemble::from_reference(model, n, seed)?;
        let communicator = Communicator::new(scheme, n - 1, seed);
        let ips = IndexProcessState::new(n, communicator.upcoming_parity(0));
        Ok(Self {
            model,
            schedule,
            exploration,
            ensemble,
            communicator,
            exploration_streams: streams(seed, Purpose::Exploration, n),
            ips,
        })
    }

    pub fn schedule(&self) -> &AnnealingSchedule {
        &self.schedule
    }

    pub fn ensemble(&self) -> &ReplicaEnsemble<M::State> {
        &self.ensemble
    }

    pub fn index_process(&self) -> &IndexProcessState {
        &self.ips
    }

    pub fn scheme(&self) -> Scheme {
        self.communicator.scheme()
    }

    /// Replace the schedule, keeping states and streams. The chain count is fixed.
    pub fn set_schedule(&mut self, schedule: AnnealingSchedule) -> Result<()> {
        if schedule.len() != self.schedule.len() {
            return Err(Error::LengthMismatch {
                expected: self.schedule.len(),
                found: schedule.len(),
            });
        }
        self.exploration.check_model(self.model, &schedule)?;
        self.schedule = schedule;
        Ok(())
    }

    /// Run `n_scans` PT scans with a fresh ledger and fresh statistics.
    pub fn run(&mut self, n_scans: u64, options: RunOptions) -> Result<RunOutput> {
        if n_scans == 0 {
            return Err(Error::Config("the number of scans must be positive".into()));
        }
        let n = self.schedule.len();
        let start_scan = self.ensemble.scan_count();
        let mut rejection = RejectionStats::new(n - 1);
        let mut energy = EnergySummaries::new(n);
        let mut ledger = RoundTripLedger::new(n);
        let mut samples = Vec::new();
        let mut index_trace = Vec::new();

        ledger.tally(&self.ips, start_scan);
        if options.trace_index {
            push_trace(&mut index_trace, &self.ips, start_scan);
        }
        for _ in 0..n_scans {
            let record = pt_scan(
                &mut self.ensemble,
                &self.schedule,
                self.model,
                &mut self.communicator,
                &self.exploration,
                &mut self.exploration_streams,
            )?;
            rejection.accumulate(&record, options.all_pair_statistics);
            advance_index_process(&mut self.ips, &record);
            assert_eq!(
                self.ips.index(),
                self.ensemble.permutation(),
                "index process diverged from the ensemble permutation"
            );
            let scan = self.ensemble.scan_count();
            ledger.tally(&self.ips, scan);
            energy.push(self.ensemble.potentials())?;
            if options.record_samples {
                samples.push(self.model.coordinates(self.ensemble.state(n - 1)));
            }
            if options.trace_index {
                push_trace(&mut index_trace, &self.ips, scan);
            }
        }
        Ok(RunOutput {
            start_scan,
            n_scans,
            rejection,
            energy,
            ledger,
            samples,
            index_trace,
        })
    }
}

fn push_trace(trace: &mut Vec<IndexTraceRow>, ips: &IndexProcessState, scan: u64) {
    trace.extend(
        ips.index()
            .iter()
            .zip(ips.epsilon())
            .enumerate()
            .map(|(machine, (&index, &epsilon))| IndexTraceRow {
                scan,
                machine,
                index,
                epsilon,
            }),
    );
}

/// Run `config.n_scans` scans from exact reference draws.
pub fn run_chain<M: TemperedModel>(
    model: &M,
    schedule: &AnnealingSchedule,
    config: &ChainConfig,
) -> Result<RunOutput> {
    if config.n_scans == 0 {
        return Err(Error::Config("the number of scans must be positive".into()));
    }
    let exploration = config
        .exploration
        .clone()
        .unwrap_or_else(|| model.default_exploration());
    let mut sampler = PtSampler::new(model, schedule.clone(), config.scheme, exploration, config.seed)?;
    sampler.run(config.n_scans, config.options)
}
