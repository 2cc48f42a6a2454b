use std::cmp::Ordering;

use crate::error::{Error, Result};

/// A strictly increasing grid `0 = β₀ < β₁ < … < β_N = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct AnnealingSchedule {
    betas: Vec<f64>,
}

impl AnnealingSchedule {
    pub fn new(betas: Vec<f64>) -> Result<Self> {
        if betas.len() < 2 {
            return Err(Error::InvalidSchedule(format!(
                "need at least 2 annealing parameters, got {}",
                betas.len()
            )));
        }
        if betas[0] != 0.0 || *betas.last().unwrap() != 1.0 {
            return Err(Error::InvalidSchedule(format!(
                "endpoints must be 0 and 1, got {} and {}",
                betas[0],
                betas.last().unwrap()
            )));
        }
        if let Some(w) = betas.windows(2).position(|w| w[0].partial_cmp(&w[1]) != Some(Ordering::Less)) {
            return Err(Error::InvalidSchedule(format!(
                "not strictly increasing at index {}: {} then {}",
                w,
                betas[w],
                betas[w + 1]
            )));
        }
        Ok(Self { betas })
    }

    /// The uniform schedule `{0, 1/N, …, 1}`.
    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSchedule("N must be at least 1".into()));
        }
        let mut betas: Vec<f64> = (0..=n).map(|i| i as f64 / n as f64).collect();
        betas[n] = 1.0;
        Self::new(betas)
    }

    /// Schedule `β_i = G(i/N)` for a generator with `G(0) = 0`, `G(1) = 1`.
    pub fn from_generator(n: usize, generator: impl Fn(f64) -> f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSchedule("N must be at least 1".into()));
        }
        let mut betas: Vec<f64> = (0..=n).map(|i| generator(i as f64 / n as f64)).collect();
        betas[0] = 0.0;
        betas[n] = 1.0;
        Self::new(betas)
    }

    pub fn betas(&self) -> &[f64] {
        &self.betas
    }

    /// Number of chains, `N + 1`.
    pub fn len(&self) -> usize {
        self.betas.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of adjacent pairs, `N`.
    pub fn n_pairs(&self) -> usize {
        self.betas.len() - 1
    }

    pub fn beta(&self, chain: usize) -> f64 {
        self.betas[chain]
    }

    /// Largest gap between consecutive annealing parameters.
    pub fn mesh(&self) -> f64 {
        self.betas
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(0.0, f64::max)
    }
}
