use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::schedule::AnnealingSchedule;

/// Knots `(β_k, Λ̂(β_k))` with `Λ̂(β_k) = Σ_{i≤k} r̂^{(i−1,i)}` and `Λ̂(0) = 0`.
pub fn cumulative_barrier_knots(rhat: &[f64], schedule: &AnnealingSchedule) -> Result<Vec<(f64, f64)>> {
    if rhat.len() != schedule.n_pairs() {
        return Err(Error::LengthMismatch {
            expected: schedule.n_pairs(),
            found: rhat.len(),
        });
    }
    let mut total = 0.0;
    let mut knots = Vec::with_capacity(schedule.len());
    knots.push((0.0, 0.0));
    for (&beta, &r) in schedule.betas()[1..].iter().zip(rhat) {
        total += r;
        knots.push((beta, total));
    }
    Ok(knots)
}

/// Monotone piecewise-cubic Hermite interpolant `Λ̂` of a cumulative barrier.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BarrierEstimate {
    betas: Vec<f64>,
    values: Vec<f64>,
    slopes: Vec<f64>,
    /// Negative increments that were clamped to zero while fitting.
    clamped: usize,
}

/// Fit a Fritsch–Carlson monotone cubic through `knots`.
///
/// Decreasing ordinates are clamped to their running maximum (the count is
/// kept in [`BarrierEstimate::clamped_increments`]).
pub fn fit_monotone_barrier(knots: &[(f64, f64)]) -> Result<BarrierEstimate> {
    if knots.len() < 2 {
        return Err(Error::InsufficientData(
            "a barrier fit needs at least two knots".into(),
        ));
    }
    let betas: Vec<f64> = knots.iter().map(|k| k.0).collect();
    if betas.windows(2).any(|w| w[1].partial_cmp(&w[0]) != Some(Ordering::Greater)) || betas.iter().any(|b| !b.is_finite()) {
        return Err(Error::InvalidSchedule("barrier knots must be strictly increasing".into()));
    }
    let mut clamped = 0;
    let mut values = Vec::with_capacity(knots.len());
    for &(_, y) in knots {
        if !y.is_finite() {
            return Err(Error::Numerical(format!("non-finite barrier knot {y}")));
        }
        match values.last() {
            Some(&prev) if y < prev => {
                clamped += 1;
                values.push(prev);
            }
            _ => values.push(y),
        }
    }

    let n = knots.len();
    let h: Vec<f64> = betas.windows(2).map(|w| w[1] - w[0]).collect();
    let delta: Vec<f64> = (0..n - 1).map(|k| (values[k + 1] - values[k]) / h[k]).collect();

    let mut slopes = vec![0.0; n];
    slopes[0] = delta[0];
    slopes[n - 1] = delta[n - 2];
    for k in 1..n - 1 {
        if delta[k - 1] > 0.0 && delta[k] > 0.0 {
            slopes[k] = (h[k] * delta[k - 1] + h[k - 1] * delta[k]) / (h[k - 1] + h[k]);
        }
    }
    for k in 0..n - 1 {
        if delta[k] == 0.0 {
            slopes[k] = 0.0;
            slopes[k + 1] = 0.0;
        }
    }
    for k in 0..n - 1 {
        if delta[k] == 0.0 {
            continue;
        }
        let a = slopes[k] / delta[k];
        let b = slopes[k + 1] / delta[k];
        let r2 = a * a + b * b;
        if r2 > 9.0 {
            let t = 3.0 / r2.sqrt();
            slopes[k] = t * a * delta[k];
            slopes[k + 1] = t * b * delta[k];
        }
    }
    Ok(BarrierEstimate {
        betas,
        values,
        slopes,
        clamped,
    })
}

impl BarrierEstimate {
    pub fn knots(&self) -> Vec<(f64, f64)> {
        self.betas.iter().copied().zip(self.values.iter().copied()).collect()
    }

    pub fn clamped_increments(&self) -> usize {
        self.clamped
    }

    /// `Λ̂(1)`, or the last knot's value for a fit over a shorter range.
    pub fn global(&self) -> f64 {
        *self.values.last().expect("at least two knots")
    }

    fn locate(&self, beta: f64) -> (usize, f64, f64) {
        let n = self.betas.len();
        let k = self
            .betas
            .partition_point(|&b| b <= beta)
            .saturating_sub(1)
            .min(n - 2);
        let h = self.betas[k + 1] - self.betas[k];
        (k, h, (beta - self.betas[k]) / h)
    }

    fn check_domain(&self, beta: f64) -> Result<()> {
        let (lo, hi) = (self.betas[0], *self.betas.last().unwrap());
        if beta >= lo && beta <= hi {
            Ok(())
        } else {
            Err(Error::OutOfRange(beta))
        }
    }

    /// `Λ̂(β)`; arguments outside the knot range are clamped to it.
    pub fn value(&self, beta: f64) -> f64 {
        let beta = beta.clamp(self.betas[0], *self.betas.last().unwrap());
        let (k, h, t) = self.locate(beta);
        let (t2, t3) = (t * t, t * t * t);
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        let v = h00 * self.values[k]
            + h10 * h * self.slopes[k]
            + h01 * self.values[k + 1]
            + h11 * h * self.slopes[k + 1];
        v.clamp(self.values[k], self.values[k + 1])
    }

    /// `λ̂(β) = Λ̂′(β)`, a piecewise quadratic.
    pub fn local_barrier(&self, beta: f64) -> Result<f64> {
        self.check_domain(beta)?;
        let (k, h, t) = self.locate(beta);
        let t2 = t * t;
        let d00 = (6.0 * t2 - 6.0 * t) / h;
        let d10 = 3.0 * t2 - 4.0 * t + 1.0;
        let d01 = (-6.0 * t2 + 6.0 * t) / h;
        let d11 = 3.0 * t2 - 2.0 * t;
        let d = d00 * self.values[k] + d10 * self.slopes[k] + d01 * self.values[k + 1] + d11 * self.slopes[k + 1];
        Ok(d.max(0.0))
    }

    /// `(β, λ̂(β), Λ̂(β))` on `points` equally spaced values over `[0, 1]`.
    pub fn grid(&self, points: usize) -> Result<Vec<(f64, f64, f64)>> {
        if points < 2 {
            return Err(Error::Config("a barrier grid needs at least two points".into()));
        }
        (0..points)
            .map(|i| {
                let beta = if i + 1 == points {
                    1.0
                } else {
                    i as f64 / (points - 1) as f64
                };
                Ok((beta, self.local_barrier(beta)?, self.value(beta)))
            })
            .collect()
    }
}

/// Equi-barrier schedule: `β*_k` solves `Λ̂(β*_k) = (k/N)·Λ̂(1)` by bisection.
pub fn update_schedule(estimate: &BarrierEstimate, n: usize) -> Result<AnnealingSchedule> {
    if n == 0 {
        return Err(Error::InvalidSchedule("N must be at least 1".into()));
    }
    if estimate.betas[0] != 0.0 || *estimate.betas.last().unwrap() != 1.0 {
        return Err(Error::InvalidSchedule(
            "the barrier estimate must cover [0, 1]".into(),
        ));
    }
    let total = estimate.global() - estimate.value(0.0);
    if total <= 0.0 {
        return AnnealingSchedule::uniform(n);
    }
    let base = estimate.value(0.0);
    let tol = 1e-10 * total;
    let mut betas = Vec::with_capacity(n + 1);
    betas.push(0.0);
    let mut lo = 0.0;
    for k in 1..n {
        let target = base + total * k as f64 / n as f64;
        let (mut a, mut b) = (lo, 1.0);
        let mut mid = 0.5 * (a + b);
        for _ in 0..200 {
            mid = 0.5 * (a + b);
            let f = estimate.value(mid) - target;
            if f.abs() <= tol {
                break;
            }
            if f < 0.0 {
                a = mid;
            } else {
                b = mid;
            }
        }
        betas.push(mid);
        lo = mid;
    }
    betas.push(1.0);
    AnnealingSchedule::new(betas)
}
