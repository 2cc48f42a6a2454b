use rand::Rng;
use rand_distr::StandardNormal;
use statrs::distribution::{ChiSquared, Continuous, ContinuousCDF, Gamma};
use statrs::function::beta::ln_beta;

use super::{check_beta, AnalyticBarrier, TemperedModel};
use crate::error::{Error, Result};
use crate::exploration::ExplorationSpec;

/// Isotropic Gaussian reference `N(0, σ₀² I_d)` annealed towards `N(0, σ² I_d)`.
///
/// The tempered law is `N(0, σ_β² I_d)` with `σ_β⁻² = (1−β)σ₀⁻² + βσ⁻²`, and
/// `V(x) = ½(σ⁻² − σ₀⁻²)|x|²`, so `𝒵(β) = (σ_β/σ₀)^d`.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussianModel {
    dim: usize,
    sigma0: f64,
    sigma: f64,
}

impl GaussianModel {
    pub fn new(dim: usize, sigma0: f64, sigma: f64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Config("gaussian: dimension must be positive".into()));
        }
        if !(sigma > 0.0 && sigma0 > sigma && sigma0.is_finite()) {
            return Err(Error::Config(format!(
                "gaussian: need sigma0 > sigma > 0, got sigma0 = {sigma0}, sigma = {sigma}"
            )));
        }
        Ok(Self { dim, sigma0, sigma })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn sigma0(&self) -> f64 {
        self.sigma0
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// Coefficient `c` in `V(x) = c|x|²`.
    fn curvature(&self) -> f64 {
        0.5 * (self.sigma.powi(-2) - self.sigma0.powi(-2))
    }

    /// Tempered variance `σ_β²`.
    pub fn variance_at(&self, beta: f64) -> f64 {
        1.0 / ((1.0 - beta) * self.sigma0.powi(-2) + beta * self.sigma.powi(-2))
    }

    /// `2^{1−d} / B(d/2, d/2)` computed in log space.
    fn beta_fn_factor(&self) -> f64 {
        let d = self.dim as f64;
        ((1.0 - d) * std::f64::consts::LN_2 - ln_beta(d / 2.0, d / 2.0)).exp()
    }

    /// `λ(β) = 2^{1−d}(σ⁻²−σ₀⁻²)σ_β² / B(d/2, d/2)`.
    pub fn lambda(&self, beta: f64) -> Result<f64> {
        check_beta(beta)?;
        Ok(self.local_barrier(beta))
    }

    /// `Λ(β) = 2^{2−d} log(σ₀/σ_β) / B(d/2, d/2)`.
    pub fn cumulative_lambda(&self, beta: f64) -> Result<f64> {
        check_beta(beta)?;
        Ok(self.cumulative_barrier(beta))
    }

    /// Equi-acceptance knot: the β solving `σ_β = σ^{k/N} σ₀^{1−k/N}`.
    pub fn optimal_beta(&self, k: usize, n: usize) -> Result<f64> {
        if n == 0 || k > n {
            return Err(Error::Config(format!("need 0 <= k <= N, N >= 1 (k = {k}, N = {n})")));
        }
        if k == 0 {
            return Ok(0.0);
        }
        if k == n {
            return Ok(1.0);
        }
        let frac = k as f64 / n as f64;
        let log_sigma = frac * self.sigma.ln() + (1.0 - frac) * self.sigma0.ln();
        let prec = (-2.0 * log_sigma).exp();
        let p0 = self.sigma0.powi(-2);
        let p1 = self.sigma.powi(-2);
        Ok(((prec - p0) / (p1 - p0)).clamp(0.0, 1.0))
    }

    /// Exact `s(β, β′)` by one-dimensional quadrature over chi-square laws.
    ///
    /// With `V^(β) = c σ_β² Q`, `Q ~ χ²_d`, condition on the energy at the
    /// larger parameter; the inner expectation is closed form in terms of the
    /// chi-square CDF and an exponentially tilted Gamma survival function.
    pub fn exact_swap_probability(&self, beta: f64, beta_prime: f64) -> Result<f64> {
        check_beta(beta)?;
        check_beta(beta_prime)?;
        let (lo, hi) = if beta <= beta_prime {
            (beta, beta_prime)
        } else {
            (beta_prime, beta)
        };
        let delta = hi - lo;
        if delta == 0.0 {
            return Ok(1.0);
        }
        let d = self.dim as f64;
        let c = self.curvature();
        let var_lo = self.variance_at(lo);
        let var_hi = self.variance_at(hi);
        let tilt_lo = delta * c * var_lo;
        let tilt_hi = delta * c * var_hi;
        let chi = ChiSquared::new(d).map_err(|e| Error::Numerical(e.to_string()))?;
        let tilted = Gamma::new(d / 2.0, 0.5 + tilt_lo).map_err(|e| Error::Numerical(e.to_string()))?;
        let log_norm = -0.5 * d * (1.0 + 2.0 * tilt_lo).ln();

        // u = v² removes the d = 1 density singularity at the origin.
        let integrand = |v: f64| -> f64 {
            let u = v * v;
            let weight = match (v > 0.0, self.dim) {
                (true, _) => 2.0 * v * chi.pdf(u),
                (false, 1) => 2.0 / (2.0 * std::f64::consts::PI).sqrt(),
                (false, _) => 0.0,
            };
            if weight == 0.0 {
                return 0.0;
            }
            let t = var_hi * u / var_lo;
            let accept_all = chi.cdf(t);
            let tail = tilted.sf(t);
            let partial = if tail > 0.0 {
                (tilt_hi * u + log_norm + tail.ln()).exp()
            } else {
                0.0
            };
            weight * (accept_all + partial)
        };
        let upper = d.sqrt() + 14.0;
        Ok(simpson(integrand, 0.0, upper, 40_000).clamp(0.0, 1.0))
    }
}

fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, intervals: usize) -> f64 {
    let n = intervals + intervals % 2;
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + i as f64 * h);
    }
    acc * h / 3.0
}

impl TemperedModel for GaussianModel {
    type State = Vec<f64>;

    fn name(&self) -> &'static str {
        "gaussian"
    }

    fn reference_potential(&self, x: &Vec<f64>) -> f64 {
        0.5 * x.iter().map(|v| v * v).sum::<f64>() / (self.sigma0 * self.sigma0)
    }

    fn potential(&self, x: &Vec<f64>) -> f64 {
        self.curvature() * x.iter().map(|v| v * v).sum::<f64>()
    }

    fn sample_reference<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<Vec<f64>> {
        self.sample_exact(0.0, rng)
    }

    fn sample_exact<R: Rng + ?Sized>(&self, beta: f64, rng: &mut R) -> Option<Vec<f64>> {
        let sd = self.variance_at(beta).sqrt();
        Some(
            (0..self.dim)
                .map(|_| sd * rng.sample::<f64, _>(StandardNormal))
                .collect(),
        )
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

impl AnalyticBarrier for GaussianModel {
    fn local_barrier(&self, beta: f64) -> f64 {
        self.beta_fn_factor() * 2.0 * self.curvature() * self.variance_at(beta)
    }

    fn cumulative_barrier(&self, beta: f64) -> f64 {
        let log_ratio = 0.5 * (self.sigma0 * self.sigma0 / self.variance_at(beta)).ln();
        2.0 * self.beta_fn_factor() * log_ratio
    }

    fn log_partition(&self, beta: f64) -> f64 {
        0.5 * self.dim as f64 * (self.variance_at(beta) / (self.sigma0 * self.sigma0)).ln()
    }

    fn mean_potential(&self, beta: f64) -> f64 {
        self.curvature() * self.dim as f64 * self.variance_at(beta)
    }

    fn swap_probability(&self, beta: f64, beta_prime: f64) -> Option<f64> {
        self.exact_swap_probability(beta, beta_prime).ok()
    }
}
