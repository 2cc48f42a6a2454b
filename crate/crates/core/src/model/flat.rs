use rand::Rng;
use rand_distr::StandardNormal;

use super::{AnalyticBarrier, TemperedModel};
use crate::error::{Error, Result};
use crate::exploration::ExplorationSpec;

/// Standard normal reference with a constant likelihood, so `π = π₀` and `Λ = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct FlatLikelihood {
    dim: usize,
}

impl FlatLikelihood {
    pub fn new(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Config("flat: dimension must be positive".into()));
        }
        Ok(Self { dim })
    }
}

impl TemperedModel for FlatLikelihood {
    type State = Vec<f64>;

    fn name(&self) -> &'static str {
        "flat"
    }

    fn reference_potential(&self, x: &Vec<f64>) -> f64 {
        0.5 * x.iter().map(|v| v * v).sum::<f64>()
    }

    fn potential(&self, _x: &Vec<f64>) -> f64 {
        0.0
    }

    fn sample_reference<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<Vec<f64>> {
        Some((0..self.dim).map(|_| rng.sample(StandardNormal)).collect())
    }

    fn sample_exact<R: Rng + ?Sized>(&self, _beta: f64, rng: &mut R) -> Option<Vec<f64>> {
        self.sample_reference(rng)
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

    fn analytic(&self) -> Option<&dyn AnalyticBarrier> {
        Some(self)
    }
}

impl AnalyticBarrier for FlatLikelihood {
    fn local_barrier(&self, _beta: f64) -> f64 {
        0.0
    }

    fn cumulative_barrier(&self, _beta: f64) -> f64 {
        0.0
    }

    fn log_partition(&self, _beta: f64) -> f64 {
        0.0
    }

    fn mean_potential(&self, _beta: f64) -> f64 {
        0.0
    }

    fn swap_probability(&self, _beta: f64, _beta_prime: f64) -> Option<f64> {
        Some(1.0)
    }
}
