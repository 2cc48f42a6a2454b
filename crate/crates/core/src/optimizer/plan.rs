use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Chain count and number of independent PT copies for a fixed core budget.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParallelismPlan {
    pub lambda_hat: f64,
    pub total_cores: usize,
    /// `N*`: the copies use `N* + 1` chains each.
    pub n_star: usize,
    pub k_star: usize,
    /// `1/(2 + 2Λ̂)`.
    pub tau_bound: f64,
}

impl ParallelismPlan {
    /// `τ_Λ(N)` for this plan's barrier and cores.
    pub fn tau_of_n(&self, n: usize) -> f64 {
        tau_lambda_n(self.lambda_hat, self.total_cores, n)
    }
}

/// `τ_Λ(N) = N̄(1 − Λ/N) / (2(N+1)(1 − Λ/N + Λ))`.
pub fn tau_lambda_n(lambda: f64, total_cores: usize, n: usize) -> f64 {
    let n = n as f64;
    let r = lambda / n;
    total_cores as f64 * (1.0 - r) / (2.0 * (n + 1.0) * (1.0 - r + lambda))
}

/// `N* = round(2Λ̂)` in `[1, N̄ − 1]` and `k* = ⌊N̄/(N*+1)⌋ ≥ 1`. Halves round up.
pub fn plan_parallelism(lambda_hat: f64, total_cores: usize) -> Result<ParallelismPlan> {
    if total_cores < 2 {
        return Err(Error::Config("at least two cores are required".into()));
    }
    if !(lambda_hat >= 0.0 && lambda_hat.is_finite()) {
        return Err(Error::Numerical(format!("invalid barrier estimate {lambda_hat}")));
    }
    let n_star = ((2.0 * lambda_hat).round().min(usize::MAX as f64) as usize).clamp(1, total_cores - 1);
    let k_star = (total_cores / (n_star + 1)).max(1);
    Ok(ParallelismPlan {
        lambda_hat,
        total_cores,
        n_star,
        k_star,
        tau_bound: 1.0 / (2.0 + 2.0 * lambda_hat),
    })
}
