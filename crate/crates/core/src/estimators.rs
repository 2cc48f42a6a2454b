//! Thermodynamic integration, observed round-trip rates and effective sample size.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::schedule::AnnealingSchedule;
use crate::tempering::RoundTripLedger;

/// Streaming mean and variance of `V` per chain.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnergySummaries {
    count: u64,
    mean: Vec<f64>,
    m2: Vec<f64>,
}

impl EnergySummaries {
    pub fn new(n_chains: usize) -> Self {
        Self {
            count: 0,
            mean: vec![0.0; n_chains],
            m2: vec![0.0; n_chains],
        }
    }

    /// Build from exact per-chain means, e.g. to isolate quadrature error.
    pub fn from_means(means: Vec<f64>) -> Self {
        let n = means.len();
        Self {
            count: 1,
            mean: means,
            m2: vec![0.0; n],
        }
    }

    pub fn n_chains(&self) -> usize {
        self.mean.len()
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    /// Add one observation of every chain's potential.
    pub fn push(&mut self, potentials: &[f64]) -> Result<()> {
        if potentials.len() != self.n_chains() {
            return Err(Error::LengthMismatch {
                expected: self.n_chains(),
                found: potentials.len(),
            });
        }
        self.count += 1;
        let n = self.count as f64;
        for ((mean, m2), &v) in self.mean.iter_mut().zip(self.m2.iter_mut()).zip(potentials) {
            let d = v - *mean;
            *mean += d / n;
            *m2 += d * (v - *mean);
        }
        Ok(())
    }

    /// `μ̂(β_i)`.
    pub fn means(&self) -> &[f64] {
        &self.mean
    }

    /// Unbiased sample variances; zero with fewer than two observations.
    pub fn variances(&self) -> Vec<f64> {
        if self.count < 2 {
            return vec![0.0; self.n_chains()];
        }
        self.m2.iter().map(|m2| m2 / (self.count - 1) as f64).collect()
    }
}

/// `log 𝒵(1)/𝒵(0) = −∫₀¹ μ(β) dβ`, by the trapezoidal rule over the schedule.
pub fn log_partition_ratio(summaries: &EnergySummaries, schedule: &AnnealingSchedule) -> Result<f64> {
    if summaries.n_chains() != schedule.len() {
        return Err(Error::LengthMismatch {
            expected: schedule.len(),
            found: summaries.n_chains(),
        });
    }
    if summaries.count() == 0 {
        return Err(Error::InsufficientData("no energy observations".into()));
    }
    let mu = summaries.means();
    let integral: f64 = schedule
        .betas()
        .windows(2)
        .zip(mu.windows(2))
        .map(|(b, m)| 0.5 * (b[1] - b[0]) * (m[0] + m[1]))
        .sum();
    Ok(-integral)
}

/// Round trips per scan, summed over machines.
pub fn observed_round_trip_rate(ledger: &RoundTripLedger, n_scans: u64) -> Result<f64> {
    if n_scans == 0 {
        return Err(Error::Config("the number of scans must be positive".into()));
    }
    Ok(ledger.total_round_trips() as f64 / n_scans as f64)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EssEstimate {
    pub ess: f64,
    /// The series had zero variance; `ess` is reported as its length.
    pub degenerate: bool,
}

/// Batch-means effective sample size with `⌊√n⌋` batches, clamped to `[1, n]`.
pub fn ess_batch_means(series: &[f64]) -> Result<EssEstimate> {
    let n = series.len();
    if n < 100 {
        return Err(Error::InsufficientData(format!(
            "batch means needs at least 100 observations, got {n}"
        )));
    }
    let n_batches = (n as f64).sqrt().floor() as usize;
    let batch = n / n_batches;
    let used = n_batches * batch;
    let mean = series[..used].iter().sum::<f64>() / used as f64;
    let var = series[..used].iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (used - 1) as f64;
    if var == 0.0 {
        return Ok(EssEstimate {
            ess: n as f64,
            degenerate: true,
        });
    }
    let batch_var = series[..used]
        .chunks_exact(batch)
        .map(|c| (c.iter().sum::<f64>() / batch as f64 - mean).powi(2))
        .sum::<f64>()
        / (n_batches - 1) as f64;
    let asymptotic_var = batch as f64 * batch_var;
    let ess = if asymptotic_var > 0.0 {
        n as f64 * var / asymptotic_var
    } else {
        n as f64
    };
    Ok(EssEstimate {
        ess: ess.clamp(1.0, n as f64),
        degenerate: false,
    })
}
