use rand::Rng;
use rand_distr::StandardNormal;

use super::TemperedModel;
use crate::error::{Error, Result};
use crate::exploration::ExplorationSpec;
use crate::rng::{stream, Purpose};

/// Posterior over the two means of an equal-weight, unit-variance Gaussian
/// mixture with an exchangeable `N(0, τ²)` prior on each mean.
///
/// The reference is the prior; the posterior is invariant under swapping the
/// two component labels, which makes it bimodal whenever the data separate.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussianMixturePosterior {
    data: Vec<f64>,
    prior_sd: f64,
}

impl GaussianMixturePosterior {
    pub fn new(data: Vec<f64>, prior_sd: f64) -> Result<Self> {
        if data.is_empty() {
            return Err(Error::Config("mixture: need at least one observation".into()));
        }
        if data.iter().any(|y| !y.is_finite()) {
            return Err(Error::Config("mixture: observations must be finite".into()));
        }
        if !(prior_sd > 0.0 && prior_sd.is_finite()) {
            return Err(Error::Config(format!(
                "mixture: prior standard deviation must be positive, got {prior_sd}"
            )));
        }
        Ok(Self { data, prior_sd })
    }

    /// Simulated data: observations alternate between components centred at
    /// `±separation/2`.
    pub fn synthetic(n_obs: usize, separation: f64, prior_sd: f64, seed: u64) -> Result<Self> {
        let mut rng = stream(seed, Purpose::Initialization, u64::MAX);
        let data = (0..n_obs)
            .map(|i| {
                let centre = if i % 2 == 0 { -0.5 } else { 0.5 } * separation;
                centre + rng.sample::<f64, _>(StandardNormal)
            })
            .collect();
        Self::new(data, prior_sd)
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }
}

impl TemperedModel for GaussianMixturePosterior {
    type State = Vec<f64>;

    fn name(&self) -> &'static str {
        "mixture"
    }

    fn reference_potential(&self, x: &Vec<f64>) -> f64 {
        0.5 * (x[0] * x[0] + x[1] * x[1]) / (self.prior_sd * self.prior_sd)
    }

    fn potential(&self, x: &Vec<f64>) -> f64 {
        let (m1, m2) = (x[0], x[1]);
        self.data
            .iter()
            .map(|y| {
                let a = -0.5 * (y - m1) * (y - m1);
                let b = -0.5 * (y - m2) * (y - m2);
                let hi = a.max(b);
                -(hi + ((a - hi).exp() + (b - hi).exp()).ln())
            })
            .sum()
    }

    fn sample_reference<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<Vec<f64>> {
        Some(vec![
            self.prior_sd * rng.sample::<f64, _>(StandardNormal),
            self.prior_sd * rng.sample::<f64, _>(StandardNormal),
        ])
    }

    fn has_exact_sampler(&self, beta: f64) -> bool {
        beta == 0.0
    }

    fn continuous_coordinates<'a>(&self, x: &'a mut Vec<f64>) -> Option<&'a mut [f64]> {
        Some(x.as_mut_slice())
    }

    fn default_exploration(&self) -> ExplorationSpec {
        ExplorationSpec::slice(3)
    }

    fn coordinates(&self, x: &Vec<f64>) -> Vec<f64> {
        x.clone()
    }
}
