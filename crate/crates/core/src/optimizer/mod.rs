//! Rejection statistics, communication-barrier estimation, schedule updates and
//! the doubling-round adaptation loop.

mod adapt;
mod barrier;
mod plan;

pub use adapt::{nrpt_adapt, AdaptConfig, AdaptOutput, RoundRecord};
pub use barrier::{cumulative_barrier_knots, fit_monotone_barrier, update_schedule, BarrierEstimate};
pub use plan::{plan_parallelism, tau_lambda_n, ParallelismPlan};

use crate::error::{Error, Result};
use crate::tempering::ScanRecord;

/// Per-pair sums of `1 − α` plus swap counts.
#[derive(Clone, Debug, PartialEq)]
pub struct RejectionStats {
    sums: Vec<f64>,
    counts: Vec<u64>,
    proposals: Vec<u64>,
    swaps: Vec<u64>,
}

impl RejectionStats {
    pub fn new(n_pairs: usize) -> Self {
        Self {
            sums: vec![0.0; n_pairs],
            counts: vec![0; n_pairs],
            proposals: vec![0; n_pairs],
            swaps: vec![0; n_pairs],
        }
    }

    pub fn n_pairs(&self) -> usize {
        self.sums.len()
    }

    /// Add one scan. With `all_pairs` every pair contributes `1 − α`; otherwise
    /// only the pairs the scan proposed.
    pub fn accumulate(&mut self, record: &ScanRecord, all_pairs: bool) {
        for i in 0..self.n_pairs() {
            if all_pairs || record.proposed[i] {
                self.sums[i] += 1.0 - record.alpha[i];
                self.counts[i] += 1;
            }
            if record.proposed[i] {
                self.proposals[i] += 1;
                self.swaps[i] += u64::from(record.swapped[i]);
            }
        }
    }

    pub fn sums(&self) -> &[f64] {
        &self.sums
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// `r̂` per pair: the mean of `1 − α`.
    pub fn rhat(&self) -> Result<Vec<f64>> {
        self.sums
            .iter()
            .zip(&self.counts)
            .enumerate()
            .map(|(i, (&s, &n))| {
                if n == 0 {
                    Err(Error::InsufficientData(format!("no rejection statistics for pair {i}")))
                } else {
                    Ok(s / n as f64)
                }
            })
            .collect()
    }

    /// Fraction of proposals accepted per pair; `NaN` where nothing was proposed.
    pub fn acceptance_rates(&self) -> Vec<f64> {
        self.swaps
            .iter()
            .zip(&self.proposals)
            .map(|(&s, &p)| if p == 0 { f64::NAN } else { s as f64 / p as f64 })
            .collect()
    }

    /// Combine statistics from an independent run over the same pairs.
    pub fn merge(&mut self, other: &RejectionStats) -> Result<()> {
        if other.n_pairs() != self.n_pairs() {
            return Err(Error::LengthMismatch {
                expected: self.n_pairs(),
                found: other.n_pairs(),
            });
        }
        for i in 0..self.n_pairs() {
            self.sums[i] += other.sums[i];
            self.counts[i] += other.counts[i];
            self.proposals[i] += other.proposals[i];
            self.swaps[i] += other.swaps[i];
        }
        Ok(())
    }
}
