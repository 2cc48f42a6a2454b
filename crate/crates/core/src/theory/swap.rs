use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::TemperedModel;
use crate::tempering::swap_accept_prob;

/// Monte Carlo estimates of `s(β,β′)`, `r(β,β′) = 1 − s` and `λ(β)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SwapFunctionEstimate {
    pub s_hat: f64,
    pub s_se: f64,
    pub r_hat: f64,
    /// `½ E|V₁ − V₂|` with both draws at `β`.
    pub lambda_mc: f64,
    pub lambda_se: f64,
}

fn draw<M: TemperedModel, R: Rng + ?Sized>(model: &M, beta: f64, rng: &mut R) -> Result<f64> {
    let x = model.sample_exact(beta, rng).ok_or(Error::NoExactSampler {
        model: model.name(),
        beta,
    })?;
    Ok(model.potential(&x))
}

fn mean_se(sum: f64, sum_sq: f64, n: usize) -> (f64, f64) {
    let n = n as f64;
    let mean = sum / n;
    let var = ((sum_sq - n * mean * mean) / (n - 1.0)).max(0.0);
    (mean, (var / n).sqrt())
}

/// Average the swap acceptance over independent exact draws from `π^(β)` and
/// `π^(β′)`, and half the absolute potential gap over pairs of draws at `β`.
pub fn mc_swap_functions<M: TemperedModel, R: Rng + ?Sized>(
    model: &M,
    beta: f64,
    beta_prime: f64,
    n_samples: usize,
    rng: &mut R,
) -> Result<SwapFunctionEstimate> {
    if n_samples < 2 {
        return Err(Error::InsufficientData("at least two samples are required".into()));
    }
    let (lo, hi) = if beta <= beta_prime {
        (beta, beta_prime)
    } else {
        (beta_prime, beta)
    };
    let (mut s_sum, mut s_sq, mut l_sum, mut l_sq) = (0.0, 0.0, 0.0, 0.0);
    for _ in 0..n_samples {
        let v_lo = draw(model, lo, rng)?;
        let v_hi = draw(model, hi, rng)?;
        let alpha = swap_accept_prob(lo, hi, v_lo, v_hi)?;
        s_sum += alpha;
        s_sq += alpha * alpha;
        let v1 = draw(model, beta, rng)?;
        let v2 = draw(model, beta, rng)?;
        let gap = 0.5 * (v1 - v2).abs();
        l_sum += gap;
        l_sq += gap * gap;
    }
    let (s_hat, s_se) = mean_se(s_sum, s_sq, n_samples);
    let (lambda_mc, lambda_se) = mean_se(l_sum, l_sq, n_samples);
    Ok(SwapFunctionEstimate {
        s_hat,
        s_se,
        r_hat: 1.0 - s_hat,
        lambda_mc,
        lambda_se,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{AnalyticBarrier, DiscreteMultimodal, GaussianModel, IsingModel};
    use crate::rng::{stream, Purpose};

    #[test]
    fn equal_betas_always_swap() {
        let m = GaussianModel::new(2, 1.0, 0.5).unwrap();
        let mut rng = stream(1, Purpose::Oracle, 0);
        let est = mc_swap_functions(&m, 0.4, 0.4, 1000, &mut rng).unwrap();
        assert_eq!(est.s_hat, 1.0);
        assert_eq!(est.r_hat, 0.0);
    }

    #[test]
    fn gaussian_local_barrier() {
        let m = GaussianModel::new(1, 1.0, 0.5).unwrap();
        let mut rng = stream(2, Purpose::Oracle, 0);
        let est = mc_swap_functions(&m, 0.0, 0.0, 200_000, &mut rng).unwrap();
        let exact = 3.0 / std::f64::consts::PI;
        assert!((est.lambda_mc - exact).abs() < 3.0 * est.lambda_se, "{est:?}");
    }

    #[test]
    fn discrete_swap_probability() {
        let m = DiscreteMultimodal::new(2, 3.0).unwrap();
        let mut rng = stream(3, Purpose::Oracle, 0);
        let est = mc_swap_functions(&m, 0.2, 0.9, 200_000, &mut rng).unwrap();
        let exact = m.swap_probability(0.2, 0.9).unwrap();
        assert!((est.s_hat - exact).abs() < 4.0 * est.s_se);
    }

    #[test]
    fn requires_exact_sampler() {
        let m = IsingModel::new(3, 0.0).unwrap();
        let mut rng = stream(4, Purpose::Oracle, 0);
        assert!(mc_swap_functions(&m, 0.1, 0.2, 10, &mut rng).is_err());
    }
}
