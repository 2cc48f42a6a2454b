use rand::Rng;

use super::{Parity, ReplicaEnsemble, Scheme};
use crate::error::{Error, Result};
use crate::exploration::{explore_ensemble, ExplorationSpec};
use crate::model::TemperedModel;
use crate::rng::{stream, streams, Purpose, StreamRng};
use crate::schedule::AnnealingSchedule;

/// `exp(min{0, (β_hi − β_lo)(v_hi − v_lo)})`, evaluated in log space.
pub fn swap_accept_prob(beta_lo: f64, beta_hi: f64, v_lo: f64, v_hi: f64) -> Result<f64> {
    if !(v_lo.is_finite() && v_hi.is_finite()) {
        return Err(Error::Numerical(format!(
            "non-finite potentials ({v_lo}, {v_hi}) in swap acceptance"
        )));
    }
    let log_ratio = (beta_hi - beta_lo) * (v_hi - v_lo);
    Ok(log_ratio.min(0.0).exp())
}

/// Swap indicators for one communication step.
#[derive(Clone, Debug, PartialEq)]
pub struct ScanRecord {
    /// Index of the scan that produced this record.
    pub scan: u64,
    pub parity: Parity,
    /// Parity of the scan that follows; determines the direction variables.
    pub next_parity: Parity,
    pub proposed: Vec<bool>,
    /// Acceptance probability of every pair, proposed or not.
    pub alpha: Vec<f64>,
    pub accepted: Vec<bool>,
    pub swapped: Vec<bool>,
}

impl ScanRecord {
    pub fn n_pairs(&self) -> usize {
        self.alpha.len()
    }
}

/// Randomness for communication: one persistent stream per pair plus the SEO
/// parity stream. Each pair draws exactly one uniform per scan whether or not
/// it is proposed, so the draws never depend on scheduling.
#[derive(Clone, Debug)]
pub struct Communicator {
    scheme: Scheme,
    pair_streams: Vec<StreamRng>,
    parity_stream: StreamRng,
    seo_upcoming: Parity,
}

impl Communicator {
    pub fn new(scheme: Scheme, n_pairs: usize, seed: u64) -> Self {
        let mut parity_stream = stream(seed, Purpose::Parity, 0);
        let seo_upcoming = draw_parity(&mut parity_stream);
        Self {
            scheme,
            pair_streams: streams(seed, Purpose::Swap, n_pairs),
            parity_stream,
            seo_upcoming,
        }
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn n_pairs(&self) -> usize {
        self.pair_streams.len()
    }

    /// Parity the scan numbered `scan` will use, if it is the next one run.
    pub fn upcoming_parity(&self, scan: u64) -> Parity {
        match self.scheme {
            Scheme::Deo => Parity::of(scan),
            Scheme::Seo => self.seo_upcoming,
        }
    }

    fn advance_parity(&mut self, scan: u64) -> (Parity, Parity) {
        match self.scheme {
            Scheme::Deo => (Parity::of(scan), Parity::of(scan + 1)),
            Scheme::Seo => {
                let current = self.seo_upcoming;
                self.seo_upcoming = draw_parity(&mut self.parity_stream);
                (current, self.seo_upcoming)
            }
        }
    }
}

fn draw_parity(rng: &mut StreamRng) -> Parity {
    if rng.random::<bool>() {
        Parity::Even
    } else {
        Parity::Odd
    }
}

/// One communication step: every adjacent pair gets an acceptance probability
/// computed on the pre-swap state, and pairs of the scan's parity class are
/// exchanged when accepted.
pub fn communication_scan<S: Clone>(
    ensemble: &mut ReplicaEnsemble<S>,
    schedule: &AnnealingSchedule,
    communicator: &mut Communicator,
) -> Result<ScanRecord> {
    let n_pairs = schedule.n_pairs();
    if ensemble.n_chains() != schedule.len() {
        return Err(Error::LengthMismatch {
            expected: schedule.len(),
            found: ensemble.n_chains(),
        });
    }
    if communicator.n_pairs() != n_pairs {
        return Err(Error::LengthMismatch {
            expected: n_pairs,
            found: communicator.n_pairs(),
        });
    }
    let scan = ensemble.scan_count;
    let (parity, next_parity) = communicator.advance_parity(scan);
    let betas = schedule.betas();

    let mut record = ScanRecord {
        scan,
        parity,
        next_parity,
        proposed: Vec::with_capacity(n_pairs),
        alpha: Vec::with_capacity(n_pairs),
        accepted: Vec::with_capacity(n_pairs),
        swapped: Vec::with_capacity(n_pairs),
    };
    for i in 0..n_pairs {
        let alpha = swap_accept_prob(
            betas[i],
            betas[i + 1],
            ensemble.potentials[i],
            ensemble.potentials[i + 1],
        )
        .map_err(|_| Error::NonFiniteSwap { lo: i, hi: i + 1 })?;
        let u: f64 = communicator.pair_streams[i].random();
        let proposed = parity.proposes(i);
        let accepted = u < alpha;
        record.proposed.push(proposed);
        record.alpha.push(alpha);
        record.accepted.push(accepted);
        record.swapped.push(proposed && accepted);
    }
    // Proposed pairs are disjoint, so the order of exchanges is irrelevant.
    for i in (0..n_pairs).filter(|&i| record.swapped[i]) {
        ensemble.swap_pair(i);
    }
    ensemble.scan_count += 1;
    Ok(record)
}

/// Communication followed by exploration of every chain.
pub fn pt_scan<M: TemperedModel>(
    ensemble: &mut ReplicaEnsemble<M::State>,
    schedule: &AnnealingSchedule,
    model: &M,
    communicator: &mut Communicator,
    exploration: &ExplorationSpec,
    exploration_streams: &mut [StreamRng],
) -> Result<ScanRecord> {
    let record = communication_scan(ensemble, schedule, communicator)?;
    explore_ensemble(ensemble, schedule, model, exploration, exploration_streams)?;
    Ok(record)
}
