//! Tempered models `π^(β)(x) ∝ exp(−βV(x) − V₀(x))`.
//!
//! Potentials are only defined up to additive constants: `V = −log L` for an
//! unnormalized likelihood `L`. Swap moves only see differences of `V`, while
//! log-normalizer oracles follow the same convention.

mod bimodal;
mod discrete;
mod flat;
mod gaussian;
mod ising;
mod mixture;

pub use bimodal::SymmetricBimodal;
pub use discrete::DiscreteMultimodal;
pub use flat::FlatLikelihood;
pub use gaussian::GaussianModel;
pub use ising::IsingModel;
pub use mixture::GaussianMixturePosterior;

use rand::Rng;

use crate::error::{Error, Result};
use crate::exploration::ExplorationSpec;

pub trait TemperedModel: Send + Sync {
    type State: Clone + Send + Sync + std::fmt::Debug;

    fn name(&self) -> &'static str;

    /// `V₀(x) = −log π₀(x)` up to a constant.
    fn reference_potential(&self, x: &Self::State) -> f64;

    /// `V(x) = −log L(x)` up to a constant.
    fn potential(&self, x: &Self::State) -> f64;

    fn log_density(&self, x: &Self::State, beta: f64) -> f64 {
        -beta * self.potential(x) - self.reference_potential(x)
    }

    /// Independent exact draw from `π₀`, if available.
    fn sample_reference<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<Self::State>;

    /// Independent exact draw from `π^(β)`, if available.
    fn sample_exact<R: Rng + ?Sized>(&self, beta: f64, rng: &mut R) -> Option<Self::State> {
        if beta == 0.0 {
            self.sample_reference(rng)
        } else {
            None
        }
    }

    fn has_exact_sampler(&self, beta: f64) -> bool;

    /// Real coordinates of a continuous state, for generic MH and slice updates.
    fn continuous_coordinates<'a>(&self, _x: &'a mut Self::State) -> Option<&'a mut [f64]> {
        None
    }

    /// One application of the model's own `π^(β)`-invariant kernel.
    fn model_specific_step<R: Rng + ?Sized>(
        &self,
        _x: &mut Self::State,
        _beta: f64,
        _rng: &mut R,
    ) -> Result<()> {
        Err(Error::Unsupported {
            model: self.name(),
            what: "a model-specific exploration kernel",
        })
    }

    fn default_exploration(&self) -> ExplorationSpec;

    /// Flat numeric view of a state for output.
    fn coordinates(&self, x: &Self::State) -> Vec<f64>;

    fn analytic(&self) -> Option<&dyn AnalyticBarrier> {
        None
    }
}

/// Closed-form communication barrier and normalizer for a model.
pub trait AnalyticBarrier: Send + Sync {
    /// Local barrier `λ(β)`.
    fn local_barrier(&self, beta: f64) -> f64;

    /// Cumulative barrier `Λ(β) = ∫₀^β λ`.
    fn cumulative_barrier(&self, beta: f64) -> f64;

    /// `log 𝒵(β)/𝒵(0)`.
    fn log_partition(&self, beta: f64) -> f64;

    /// `μ(β) = E[V^(β)]`.
    fn mean_potential(&self, beta: f64) -> f64;

    /// Swap acceptance probability `s(β, β′)` under independent stationary draws.
    fn swap_probability(&self, _beta: f64, _beta_prime: f64) -> Option<f64> {
        None
    }

    /// Global barrier `Λ = Λ(1)`.
    fn global_barrier(&self) -> f64 {
        self.cumulative_barrier(1.0)
    }
}

pub(crate) fn check_beta(beta: f64) -> Result<()> {
    if (0.0..=1.0).contains(&beta) {
        Ok(())
    } else {
        Err(Error::OutOfRange(beta))
    }
}
