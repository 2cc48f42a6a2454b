use rand::Rng;
use rand_distr::StandardNormal;

use super::TemperedModel;
use crate::error::{Error, Result};
use crate::exploration::ExplorationSpec;

/// Two mirror-image modes: `π₀ ∝ exp(−(|x|−m)²/2σ₀²)` annealed towards
/// `π ∝ exp(−(|x|−m)²/2σ²)` on the real line.
///
/// Both modes carry mass ½ under every `π^(β)`, so the reference matches the
/// target's mode masses. Each mode restricted to its half-line is a truncated
/// Gaussian, sampled exactly by rejection.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricBimodal {
    location: f64,
    sigma0: f64,
    sigma: f64,
}

impl SymmetricBimodal {
    pub fn new(location: f64, sigma0: f64, sigma: f64) -> Result<Self> {
        if !(location >= 0.0 && location.is_finite()) {
            return Err(Error::Config("bimodal: mode location must be >= 0".into()));
        }
        if !(sigma > 0.0 && sigma0 > sigma && sigma0.is_finite()) {
            return Err(Error::Config(format!(
                "bimodal: need sigma0 > sigma > 0, got sigma0 = {sigma0}, sigma = {sigma}"
            )));
        }
        Ok(Self {
            location,
            sigma0,
            sigma,
        })
    }

    fn variance_at(&self, beta: f64) -> f64 {
        1.0 / ((1.0 - beta) * self.sigma0.powi(-2) + beta * self.sigma.powi(-2))
    }

    /// 0 for the negative half-line, 1 for the positive one.
    pub fn mode_of(&self, x: &[f64]) -> usize {
        usize::from(x[0] >= 0.0)
    }

    /// Exact draw from `π^(β)` conditioned on one mode.
    pub fn sample_in_mode<R: Rng + ?Sized>(&self, mode: usize, beta: f64, rng: &mut R) -> Vec<f64> {
        let sd = self.variance_at(beta).sqrt();
        let magnitude = loop {
            let r = self.location + sd * rng.sample::<f64, _>(StandardNormal);
            if r >= 0.0 {
                break r;
            }
        };
        vec![if mode == 1 { magnitude } else { -magnitude }]
    }
}

impl TemperedModel for SymmetricBimodal {
    type State = Vec<f64>;

    fn name(&self) -> &'static str {
        "bimodal"
    }

    fn reference_potential(&self, x: &Vec<f64>) -> f64 {
        let u = x[0].abs() - self.location;
        0.5 * u * u / (self.sigma0 * self.sigma0)
    }

    fn potential(&self, x: &Vec<f64>) -> f64 {
        let u = x[0].abs() - self.location;
        0.5 * (self.sigma.powi(-2) - self.sigma0.powi(-2)) * u * u
    }

    fn sample_reference<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<Vec<f64>> {
        self.sample_exact(0.0, rng)
    }

    fn sample_exact<R: Rng + ?Sized>(&self, beta: f64, rng: &mut R) -> Option<Vec<f64>> {
        let mode = usize::from(rng.random::<bool>());
        Some(self.sample_in_mode(mode, beta, rng))
    }

    fn has_exact_sampler(&self, _beta: f64) -> bool {
        true
    }

    fn continuous_coordinates<'a>(&self, x: &'a mut Vec<f64>) -> Option<&'a mut [f64]> {
        Some(x.as_mut_slice())
    }

    fn default_exploration(&self) -> ExplorationSpec {
        ExplorationSpec::exact()
    }

    fn coordinates(&self, x: &Vec<f64>) -> Vec<f64> {
        x.clone()
    }
}
