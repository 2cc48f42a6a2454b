use rand::Rng;

use super::TemperedModel;
use crate::error::{Error, Result};
use crate::exploration::ExplorationSpec;

/// Critical inverse temperature of the infinite square lattice, `log(1+√2)/2`.
pub const ISING_CRITICAL_BETA: f64 = 0.440_686_793_509_771_5;

/// Square-lattice Ising model with free boundaries,
/// `π^(β)(x) ∝ exp(β Σ_{i∼j} x_i x_j + μ Σ_i x_i)`.
///
/// The reference `π₀ ∝ exp(μ Σ x_i)` is a product measure and is sampled
/// exactly site by site.
#[derive(Clone, Debug, PartialEq)]
pub struct IsingModel {
    side: usize,
    field: f64,
}

fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

impl IsingModel {
    pub const CRITICAL_BETA: f64 = ISING_CRITICAL_BETA;

    pub fn new(side: usize, field: f64) -> Result<Self> {
        if side == 0 {
            return Err(Error::Config("ising: grid side must be positive".into()));
        }
        if !field.is_finite() {
            return Err(Error::Config("ising: magnetic moment must be finite".into()));
        }
        Ok(Self { side, field })
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn field(&self) -> f64 {
        self.field
    }

    pub fn n_sites(&self) -> usize {
        self.side * self.side
    }

    fn neighbor_sum(&self, x: &[i8], site: usize) -> i32 {
        let m = self.side;
        let (r, c) = (site / m, site % m);
        let mut s = 0i32;
        if r > 0 {
            s += x[site - m] as i32;
        }
        if r + 1 < m {
            s += x[site + m] as i32;
        }
        if c > 0 {
            s += x[site - 1] as i32;
        }
        if c + 1 < m {
            s += x[site + 1] as i32;
        }
        s
    }

    /// Gibbs conditional `P(x_site = +1 | rest) = sigmoid(2(β Σ_{j∼i} x_j + μ))`.
    pub fn conditional_up_probability(&self, x: &[i8], site: usize, beta: f64) -> Result<f64> {
        if site >= self.n_sites() || x.len() != self.n_sites() {
            return Err(Error::Config(format!(
                "ising: site {site} invalid for a {}x{} grid",
                self.side, self.side
            )));
        }
        Ok(sigmoid(2.0 * (beta * self.neighbor_sum(x, site) as f64 + self.field)))
    }

    /// One heat-bath sweep over all sites in lexicographic order.
    pub fn gibbs_sweep<R: Rng + ?Sized>(&self, x: &mut [i8], beta: f64, rng: &mut R) {
        for site in 0..self.n_sites() {
            let p = sigmoid(2.0 * (beta * self.neighbor_sum(x, site) as f64 + self.field));
            x[site] = if rng.random::<f64>() < p { 1 } else { -1 };
        }
    }

    /// Sum over nearest-neighbour pairs `Σ_{i∼j} x_i x_j`.
    pub fn interaction(&self, x: &[i8]) -> i64 {
        let m = self.side;
        let mut acc = 0i64;
        for r in 0..m {
            for c in 0..m {
                let s = x[r * m + c] as i64;
                if c + 1 < m {
                    acc += s * x[r * m + c + 1] as i64;
                }
                if r + 1 < m {
                    acc += s * x[(r + 1) * m + c] as i64;
                }
            }
        }
        acc
    }
}

impl TemperedModel for IsingModel {
    type State = Vec<i8>;

    fn name(&self) -> &'static str {
        "ising"
    }

    fn reference_potential(&self, x: &Vec<i8>) -> f64 {
        -self.field * x.iter().map(|&s| s as f64).sum::<f64>()
    }

    fn potential(&self, x: &Vec<i8>) -> f64 {
        -(self.interaction(x) as f64)
    }

    fn sample_reference<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<Vec<i8>> {
        let p_up = sigmoid(2.0 * self.field);
        Some(
            (0..self.n_sites())
                .map(|_| if rng.random::<f64>() < p_up { 1 } else { -1 })
                .collect(),
        )
    }

    fn has_exact_sampler(&self, beta: f64) -> bool {
        beta == 0.0
    }

    fn model_specific_step<R: Rng + ?Sized>(
        &self,
        x: &mut Vec<i8>,
        beta: f64,
        rng: &mut R,
    ) -> Result<()> {
        self.gibbs_sweep(x, beta, rng);
        Ok(())
    }

    fn default_exploration(&self) -> ExplorationSpec {
        ExplorationSpec::model_specific()
    }

    fn coordinates(&self, x: &Vec<i8>) -> Vec<f64> {
        x.iter().map(|&s| s as f64).collect()
    }
}
