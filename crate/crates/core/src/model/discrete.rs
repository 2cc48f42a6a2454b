use rand::Rng;

use super::{check_beta, AnalyticBarrier, TemperedModel};
use crate::error::{Error, Result};
use crate::exploration::ExplorationSpec;

/// Uniform reference on `{0, …, 2k}` with target `π(x) ∝ a^{1_even(x)}`.
///
/// The target has `k + 1` modes at the even points separated by low-mass odd
/// points; `V(x) = −1_even(x) log a`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscreteMultimodal {
    k: usize,
    a: f64,
}

impl DiscreteMultimodal {
    pub fn new(k: usize, a: f64) -> Result<Self> {
        if k == 0 {
            return Err(Error::Config("discrete: k must be at least 1".into()));
        }
        if !(a > 1.0 && a.is_finite()) {
            return Err(Error::Config(format!("discrete: need a > 1, got {a}")));
        }
        Ok(Self { k, a })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn n_states(&self) -> usize {
        2 * self.k + 1
    }

    fn normalizer(&self, beta: f64) -> f64 {
        let k = self.k as f64;
        k + (k + 1.0) * self.a.powf(beta)
    }

    /// Probability mass function of `π^(β)` over `{0, …, 2k}`.
    pub fn probabilities(&self, beta: f64) -> Vec<f64> {
        let z = self.normalizer(beta);
        let even = self.a.powf(beta) / z;
        let odd = 1.0 / z;
        (0..self.n_states())
            .map(|x| if x.is_multiple_of(2) { even } else { odd })
            .collect()
    }

    /// `λ(β) = k(k+1) a^β log a / (k + (k+1)a^β)²`.
    pub fn lambda(&self, beta: f64) -> Result<f64> {
        check_beta(beta)?;
        Ok(self.local_barrier(beta))
    }

    /// `Λ = k(k+1)(a−1) / ((2k+1)(k + (k+1)a))`.
    pub fn global_lambda(&self) -> f64 {
        let k = self.k as f64;
        k * (k + 1.0) * (self.a - 1.0) / ((2.0 * k + 1.0) * (k + (k + 1.0) * self.a))
    }
}

impl TemperedModel for DiscreteMultimodal {
    type State = usize;

    fn name(&self) -> &'static str {
        "discrete"
    }

    fn reference_potential(&self, _x: &usize) -> f64 {
        0.0
    }

    fn potential(&self, x: &usize) -> f64 {
        if x.is_multiple_of(2) {
            -self.a.ln()
        } else {
            0.0
        }
    }

    fn sample_reference<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<usize> {
        Some(rng.random_range(0..self.n_states()))
    }

    fn sample_exact<R: Rng + ?Sized>(&self, beta: f64, rng: &mut R) -> Option<usize> {
        let weight_even = self.a.powf(beta);
        let mut u = rng.random::<f64>() * self.normalizer(beta);
        for x in 0..self.n_states() {
            let w = if x.is_multiple_of(2) { weight_even } else { 1.0 };
            if u < w {
                return Some(x);
            }
            u -= w;
        }
        Some(self.n_states() - 1)
    }

    fn has_exact_sampler(&self, _beta: f64) -> bool {
        true
    }

    /// Gibbs update of the single site, i.e. an exact draw from `π^(β)`.
    fn model_specific_step<R: Rng + ?Sized>(
        &self,
        x: &mut usize,
        beta: f64,
        rng: &mut R,
    ) -> Result<()> {
        *x = self.sample_exact(beta, rng).expect("discrete sampler is exact");
        Ok(())
    }

    fn default_exploration(&self) -> ExplorationSpec {
        ExplorationSpec::model_specific()
    }

    fn coordinates(&self, x: &usize) -> Vec<f64> {
        vec![*x as f64]
    }

    fn analytic(&self) -> Option<&dyn AnalyticBarrier> {
        Some(self)
    }
}

impl AnalyticBarrier for DiscreteMultimodal {
    fn local_barrier(&self, beta: f64) -> f64 {
        let k = self.k as f64;
        let ab = self.a.powf(beta);
        k * (k + 1.0) * ab * self.a.ln() / (k + (k + 1.0) * ab).powi(2)
    }

    fn cumulative_barrier(&self, beta: f64) -> f64 {
        let k = self.k as f64;
        k / (2.0 * k + 1.0) - k / self.normalizer(beta)
    }

    fn log_partition(&self, beta: f64) -> f64 {
        (self.normalizer(beta) / (2.0 * self.k as f64 + 1.0)).ln()
    }

    fn mean_potential(&self, beta: f64) -> f64 {
        let k = self.k as f64;
        -self.a.ln() * (k + 1.0) * self.a.powf(beta) / self.normalizer(beta)
    }

    fn swap_probability(&self, beta: f64, beta_prime: f64) -> Option<f64> {
        let p = self.probabilities(beta);
        let q = self.probabilities(beta_prime);
        let delta = beta_prime - beta;
        let mut s = 0.0;
        for (x, px) in p.iter().enumerate() {
            for (y, qy) in q.iter().enumerate() {
                let arg = delta * (self.potential(&y) - self.potential(&x));
                s += px * qy * arg.min(0.0).exp();
            }
        }
        Some(s)
    }

    fn global_barrier(&self) -> f64 {
        self.global_lambda()
    }
}
