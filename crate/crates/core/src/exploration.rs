//! `π^(β)`-invariant local exploration kernels.

use rand::Rng;
use rand_distr::{Exp1, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::TemperedModel;
use crate::rng::StreamRng;
use crate::schedule::AnnealingSchedule;
use crate::tempering::ReplicaEnsemble;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExplorationKind {
    /// Independent exact draws from `π^(β)`; requires a model-provided sampler.
    ExactReference,
    /// Isotropic random-walk Metropolis–Hastings.
    Rwmh,
    /// Univariate slice sampling per coordinate (doubling then shrinkage).
    Slice,
    /// The model's own kernel, e.g. single-site Gibbs sweeps.
    ModelSpecific,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ExplorationSpec {
    pub kind: ExplorationKind,
    /// Kernel applications per scan.
    pub n_expl: usize,
    pub step_size: f64,
    pub slice_width: f64,
    pub max_doublings: u32,
}

impl Default for ExplorationSpec {
    fn default() -> Self {
        Self {
            kind: ExplorationKind::ExactReference,
            n_expl: 1,
            step_size: 1.0,
            slice_width: 1.0,
            max_doublings: 10,
        }
    }
}

impl ExplorationSpec {
    pub fn exact() -> Self {
        Self::default()
    }

    pub fn model_specific() -> Self {
        Self {
            kind: ExplorationKind::ModelSpecific,
            ..Self::default()
        }
    }

    pub fn slice(n_expl: usize) -> Self {
        Self {
            kind: ExplorationKind::Slice,
            n_expl,
            ..Self::default()
        }
    }

    pub fn rwmh(step_size: f64, n_expl: usize) -> Self {
        Self {
            kind: ExplorationKind::Rwmh,
            n_expl,
            step_size,
            ..Self::default()
        }
    }

    pub fn with_n_expl(mut self, n_expl: usize) -> Self {
        self.n_expl = n_expl;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_expl == 0 {
            return Err(Error::Config("n_expl must be at least 1".into()));
        }
        if !(self.step_size >= 0.0 && self.step_size.is_finite()) {
            return Err(Error::Config(format!("invalid rwmh step size {}", self.step_size)));
        }
        if !(self.slice_width > 0.0 && self.slice_width.is_finite()) {
            return Err(Error::Config(format!("invalid slice width {}", self.slice_width)));
        }
        Ok(())
    }

    /// Check that `model` supports this kernel at every β of `schedule`.
    pub fn check_model<M: TemperedModel>(&self, model: &M, schedule: &AnnealingSchedule) -> Result<()> {
        self.validate()?;
        if self.kind == ExplorationKind::ExactReference {
            if let Some(&beta) = schedule.betas().iter().find(|&&b| !model.has_exact_sampler(b)) {
                return Err(Error::NoExactSampler {
                    model: model.name(),
                    beta,
                });
            }
        }
        if matches!(self.kind, ExplorationKind::Rwmh | ExplorationKind::Slice) {
            let mut probe = model
                .sample_reference(&mut crate::rng::stream(0, crate::rng::Purpose::Oracle, 0))
                .ok_or(Error::NoExactSampler {
                    model: model.name(),
                    beta: 0.0,
                })?;
            if model.continuous_coordinates(&mut probe).is_none() {
                return Err(Error::Unsupported {
                    model: model.name(),
                    what: "continuous-coordinate kernels",
                });
            }
        }
        Ok(())
    }
}

/// Independent draw from `π₀`.
pub fn reference_sample<M: TemperedModel, R: Rng + ?Sized>(model: &M, rng: &mut R) -> Result<M::State> {
    model.sample_reference(rng).ok_or(Error::NoExactSampler {
        model: model.name(),
        beta: 0.0,
    })
}

fn finite_log_density<M: TemperedModel>(model: &M, x: &M::State, beta: f64) -> Result<f64> {
    let lp = model.log_density(x, beta);
    if lp.is_finite() {
        Ok(lp)
    } else {
        Err(Error::Numerical(format!(
            "non-finite log-density {lp} at the current state (beta = {beta})"
        )))
    }
}

/// One isotropic random-walk MH step targeting `π^(β)`. Returns whether the
/// proposal was accepted.
pub fn rwmh_step<M: TemperedModel, R: Rng + ?Sized>(
    model: &M,
    x: &mut M::State,
    beta: f64,
    step_size: f64,
    rng: &mut R,
) -> Result<bool> {
    let current = finite_log_density(model, x, beta)?;
    let mut proposal = x.clone();
    {
        let coords = model
            .continuous_coordinates(&mut proposal)
            .ok_or(Error::Unsupported {
                model: model.name(),
                what: "random-walk Metropolis-Hastings",
            })?;
        for c in coords.iter_mut() {
            *c += step_size * rng.sample::<f64, _>(StandardNormal);
        }
    }
    let proposed = model.log_density(&proposal, beta);
    let u: f64 = rng.random();
    // NaN proposals are rejected by the comparison.
    if u < (proposed - current).exp() {
        *x = proposal;
        Ok(true)
    } else {
        Ok(false)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SliceParams {
    pub initial_width: f64,
    pub max_doublings: u32,
}

impl Default for SliceParams {
    fn default() -> Self {
        Self {
            initial_width: 1.0,
            max_doublings: 10,
        }
    }
}

const MAX_SHRINKS: u32 = 200;

/// One univariate slice-sampling update of `coordinate`, stepping out by
/// doubling and then shrinking, with the doubling acceptance check that keeps
/// the kernel reversible.
pub fn slice_sample_step<M: TemperedModel, R: Rng + ?Sized>(
    model: &M,
    x: &mut M::State,
    coordinate: usize,
    beta: f64,
    params: SliceParams,
    rng: &mut R,
) -> Result<()> {
    let x0 = {
        let coords = model.continuous_coordinates(x).ok_or(Error::Unsupported {
            model: model.name(),
            what: "slice sampling",
        })?;
        coords[coordinate]
    };
    let mut scratch = x.clone();
    let mut log_f = |value: f64| -> f64 {
        model.continuous_coordinates(&mut scratch).expect("continuous state")[coordinate] = value;
        let lp = model.log_density(&scratch, beta);
        if lp.is_nan() {
            f64::NEG_INFINITY
        } else {
            lp
        }
    };

    let log_y = finite_log_density(model, x, beta)? - rng.sample::<f64, _>(Exp1);
    let w = params.initial_width;

    let mut left = x0 - w * rng.random::<f64>();
    let mut right = left + w;
    let mut f_left = log_f(left);
    let mut f_right = log_f(right);
    let mut doublings = 0;
    while (log_y < f_left || log_y < f_right) && doublings < params.max_doublings {
        let width = right - left;
        if rng.random::<bool>() {
            left -= width;
            f_left = log_f(left);
        } else {
            right += width;
            f_right = log_f(right);
        }
        doublings += 1;
    }
    // One open end is fine: the acceptance check below keeps the update
    // reversible. Both ends still inside the slice means it could not be
    // located at all.
    if log_y < f_left && log_y < f_right {
        return Err(Error::SliceBracket {
            x: x0,
            doublings,
            left,
            right,
        });
    }

    let accept = |x1: f64, log_f: &mut dyn FnMut(f64) -> f64| -> bool {
        let (mut lo, mut hi) = (left, right);
        let mut differs = false;
        while hi - lo > 1.1 * w {
            let mid = 0.5 * (lo + hi);
            if (x0 < mid) != (x1 < mid) {
                differs = true;
            }
            if x1 < mid {
                hi = mid;
            } else {
                lo = mid;
            }
            if differs && log_y >= log_f(lo) && log_y >= log_f(hi) {
                return false;
            }
        }
        true
    };

    let (mut lo, mut hi) = (left, right);
    for _ in 0..MAX_SHRINKS {
        let x1 = lo + rng.random::<f64>() * (hi - lo);
        if log_y < log_f(x1) && accept(x1, &mut log_f) {
            model.continuous_coordinates(x).expect("continuous state")[coordinate] = x1;
            return Ok(());
        }
        if x1 < x0 {
            lo = x1;
        } else {
            hi = x1;
        }
    }
    Err(Error::SliceShrinkage {
        x: x0,
        iterations: MAX_SHRINKS,
    })
}

/// Apply the chain's kernel `spec.n_expl` times. The reference chain (β = 0)
/// uses an exact `π₀` draw whenever the model provides one.
pub fn explore_chain<M: TemperedModel, R: Rng + ?Sized>(
    model: &M,
    x: &mut M::State,
    beta: f64,
    spec: &ExplorationSpec,
    rng: &mut R,
) -> Result<()> {
    if beta == 0.0 && model.has_exact_sampler(0.0) {
        *x = reference_sample(model, rng)?;
        return Ok(());
    }
    match spec.kind {
        ExplorationKind::ExactReference => {
            *x = model.sample_exact(beta, rng).ok_or(Error::NoExactSampler {
                model: model.name(),
                beta,
            })?;
        }
        ExplorationKind::Rwmh => {
            for _ in 0..spec.n_expl {
                rwmh_step(model, x, beta, spec.step_size, rng)?;
            }
        }
        ExplorationKind::Slice => {
            let dim = model
                .continuous_coordinates(x)
                .ok_or(Error::Unsupported {
                    model: model.name(),
                    what: "slice sampling",
                })?
                .len();
            let params = SliceParams {
                initial_width: spec.slice_width,
                max_doublings: spec.max_doublings,
            };
            for _ in 0..spec.n_expl {
                for coordinate in 0..dim {
                    slice_sample_step(model, x, coordinate, beta, params, rng)?;
                }
            }
        }
        ExplorationKind::ModelSpecific => {
            for _ in 0..spec.n_expl {
                model.model_specific_step(x, beta, rng)?;
            }
        }
    }
    Ok(())
}

/// Explore every chain independently with its own stream and refresh the cached
/// potentials. The permutation is never touched.
pub fn explore_ensemble<M: TemperedModel>(
    ensemble: &mut ReplicaEnsemble<M::State>,
    schedule: &AnnealingSchedule,
    model: &M,
    spec: &ExplorationSpec,
    streams: &mut [StreamRng],
) -> Result<()> {
    if streams.len() != ensemble.n_chains() || schedule.len() != ensemble.n_chains() {
        return Err(Error::LengthMismatch {
            expected: ensemble.n_chains(),
            found: streams.len().min(schedule.len()),
        });
    }
    let betas = schedule.betas();
    ensemble
        .states
        .par_iter_mut()
        .zip(ensemble.potentials.par_iter_mut())
        .zip(streams.par_iter_mut())
        .enumerate()
        .try_for_each(|(chain, ((x, v), rng))| {
            explore_chain(model, x, betas[chain], spec, rng)?;
            *v = model.potential(x);
            if v.is_finite() {
                Ok(())
            } else {
                Err(Error::NonFinitePotential { chain, value: *v })
            }
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{DiscreteMultimodal, FlatLikelihood, GaussianModel, IsingModel};
    use crate::rng::{stream, Purpose};

    /// `π(x) ∝ exp(−(x²−1)²)` through the model interface.
    struct DoubleWell;

    impl TemperedModel for DoubleWell {
        type State = Vec<f64>;
        fn name(&self) -> &'static str {
            "double-well"
        }
        fn reference_potential(&self, _x: &Vec<f64>) -> f64 {
            0.0
        }
        fn potential(&self, x: &Vec<f64>) -> f64 {
            (x[0] * x[0] - 1.0).powi(2)
        }
        fn sample_reference<R: Rng + ?Sized>(&self, _rng: &mut R) -> Option<Vec<f64>> {
            None
        }
        fn has_exact_sampler(&self, _beta: f64) -> bool {
            false
        }
        fn continuous_coordinates<'a>(&self, x: &'a mut Vec<f64>) -> Option<&'a mut [f64]> {
            Some(x.as_mut_slice())
        }
        fn default_exploration(&self) -> ExplorationSpec {
            ExplorationSpec::slice(1)
        }
        fn coordinates(&self, x: &Vec<f64>) -> Vec<f64> {
            x.clone()
        }
    }

    #[test]
    fn reference_sample_moments() {
        let m = GaussianModel::new(1, 1.0, 0.5).unwrap();
        let mut rng = stream(1, Purpose::Oracle, 0);
        let n = 1_000_000;
        let (mut s, mut s2) = (0.0, 0.0);
        for _ in 0..n {
            let x = reference_sample(&m, &mut rng).unwrap()[0];
            s += x;
            s2 += x * x;
        }
        let mean = s / n as f64;
        let var = s2 / n as f64 - mean * mean;
        assert!(mean.abs() < 0.005, "{mean}");
        assert!((var - 1.0).abs() < 0.01, "{var}");
        assert!(reference_sample(&DoubleWell, &mut rng).is_err());
    }

    #[test]
    fn ising_reference_is_symmetric() {
        let m = IsingModel::new(5, 0.0).unwrap();
        let mut rng = stream(2, Purpose::Oracle, 0);
        let n = 40_000;
        let mut up = [0usize; 25];
        for _ in 0..n {
            for (c, s) in up.iter_mut().zip(reference_sample(&m, &mut rng).unwrap()) {
                *c += usize::from(s == 1);
            }
        }
        for c in up {
            assert!((c as f64 / n as f64 - 0.5).abs() < 0.01);
        }
    }

    #[test]
    fn rwmh_zero_step_keeps_state() {
        let m = GaussianModel::new(2, 1.0, 0.5).unwrap();
        let mut rng = stream(3, Purpose::Oracle, 0);
        let mut x = vec![0.3, -1.2];
        for _ in 0..100 {
            assert!(rwmh_step(&m, &mut x, 0.7, 0.0, &mut rng).unwrap());
        }
        assert_eq!(x, vec![0.3, -1.2]);
    }

    /// Improper flat target; every proposal has ratio one.
    struct Uniform;

    impl TemperedModel for Uniform {
        type State = Vec<f64>;
        fn name(&self) -> &'static str {
            "uniform"
        }
        fn reference_potential(&self, _x: &Vec<f64>) -> f64 {
            0.0
        }
        fn potential(&self, _x: &Vec<f64>) -> f64 {
            0.0
        }
        fn sample_reference<R: Rng + ?Sized>(&self, _rng: &mut R) -> Option<Vec<f64>> {
            Some(vec![0.0])
        }
        fn has_exact_sampler(&self, _beta: f64) -> bool {
            false
        }
        fn continuous_coordinates<'a>(&self, x: &'a mut Vec<f64>) -> Option<&'a mut [f64]> {
            Some(x.as_mut_slice())
        }
        fn default_exploration(&self) -> ExplorationSpec {
            ExplorationSpec::rwmh(1.0, 1)
        }
        fn coordinates(&self, x: &Vec<f64>) -> Vec<f64> {
            x.clone()
        }
    }

    #[test]
    fn rwmh_flat_target_always_accepts() {
        let mut rng = stream(4, Purpose::Oracle, 0);
        let mut x = vec![0.0];
        let accepted = (0..10_000)
            .filter(|_| rwmh_step(&Uniform, &mut x, 0.5, 3.0, &mut rng).unwrap())
            .count();
        assert_eq!(accepted, 10_000);
    }

    #[test]
    fn rwmh_preserves_gaussian_variance() {
        let m = GaussianModel::new(1, 1.0, 0.5).unwrap();
        let mut rng = stream(5, Purpose::Oracle, 0);
        let mut x = m.sample_exact(1.0, &mut rng).unwrap();
        let n = 100_000;
        let mut s2 = 0.0;
        for _ in 0..n {
            rwmh_step(&m, &mut x, 1.0, 0.9, &mut rng).unwrap();
            s2 += x[0] * x[0];
        }
        let var = s2 / n as f64;
        assert!((var / 0.25 - 1.0).abs() < 0.03, "{var}");
    }

    #[test]
    fn rwmh_rejects_non_finite_current_state() {
        let m = GaussianModel::new(1, 1.0, 0.5).unwrap();
        let mut rng = stream(5, Purpose::Oracle, 1);
        let mut x = vec![f64::INFINITY];
        assert!(rwmh_step(&m, &mut x, 1.0, 0.1, &mut rng).is_err());
    }

    #[test]
    fn slice_preserves_gaussian_variance() {
        let m = GaussianModel::new(1, 1.0, 0.5).unwrap();
        let mut rng = stream(6, Purpose::Oracle, 0);
        let mut x = m.sample_exact(1.0, &mut rng).unwrap();
        let n = 100_000;
        let mut s2 = 0.0;
        for _ in 0..n {
            slice_sample_step(&m, &mut x, 0, 1.0, SliceParams::default(), &mut rng).unwrap();
            s2 += x[0] * x[0];
        }
        let var = s2 / n as f64;
        assert!((var / 0.25 - 1.0).abs() < 0.03, "{var}");
    }

    #[test]
    fn slice_stays_in_narrow_slice() {
        let m = GaussianModel::new(1, 1.0, 0.001).unwrap();
        let mut rng = stream(7, Purpose::Oracle, 0);
        let params = SliceParams {
            initial_width: 5.0,
            max_doublings: 10,
        };
        let mut x = vec![0.0];
        for _ in 0..1000 {
            let before = m.log_density(&x, 1.0);
            slice_sample_step(&m, &mut x, 0, 1.0, params, &mut rng).unwrap();
            // The new point lies in a slice below the old density.
            assert!(m.log_density(&x, 1.0) > before - 40.0);
            assert!(x[0].abs() < 0.01);
        }
    }

    #[test]
    fn slice_reports_bracketing_failure() {
        let m = FlatLikelihood::new(1).unwrap();
        let mut rng = stream(8, Purpose::Oracle, 0);
        // A tiny width with no doublings cannot bracket a unit-scale slice.
        let params = SliceParams {
            initial_width: 1e-6,
            max_doublings: 0,
        };
        let mut x = vec![0.0];
        let err = slice_sample_step(&m, &mut x, 0, 1.0, params, &mut rng);
        assert!(matches!(err, Err(Error::SliceBracket { .. })));
    }

    #[test]
    fn slice_visits_both_wells() {
        let mut rng = stream(9, Purpose::Oracle, 0);
        let mut x = vec![1.0];
        let n = 1_000_000;
        let params = SliceParams::default();
        let mut sign = 0.0;
        for _ in 0..n {
            slice_sample_step(&DoubleWell, &mut x, 0, 1.0, params, &mut rng).unwrap();
            sign += x[0].signum();
        }
        assert!((sign / n as f64).abs() < 0.05, "{}", sign / n as f64);
    }

    #[test]
    fn ising_sweeps_match_enumeration() {
        let m = IsingModel::new(2, 0.3).unwrap();
        let beta = 0.6;
        let weight = |cfg: usize| -> f64 {
            let x: Vec<i8> = (0..4).map(|i| if cfg >> i & 1 == 1 { 1 } else { -1 }).collect();
            m.log_density(&x, beta).exp()
        };
        let z: f64 = (0..16).map(weight).sum();
        let mut rng = stream(10, Purpose::Oracle, 0);
        let mut x = m.sample_reference(&mut rng).unwrap();
        let mut counts = [0usize; 16];
        let n = 400_000;
        for _ in 0..n {
            m.model_specific_step(&mut x, beta, &mut rng).unwrap();
            let cfg = x.iter().enumerate().fold(0, |acc, (i, &s)| acc | (usize::from(s == 1) << i));
            counts[cfg] += 1;
        }
        for (cfg, &c) in counts.iter().enumerate() {
            let p = weight(cfg) / z;
            let freq = c as f64 / n as f64;
            assert!((freq - p).abs() < 5.0 * (p / n as f64).sqrt() + 1e-3, "{cfg}: {freq} vs {p}");
        }
    }

    #[test]
    fn exact_kind_requires_sampler() {
        let m = IsingModel::new(3, 0.0).unwrap();
        let schedule = AnnealingSchedule::uniform(2).unwrap();
        assert!(ExplorationSpec::exact().check_model(&m, &schedule).is_err());
        assert!(ExplorationSpec::model_specific().check_model(&m, &schedule).is_ok());
        assert!(ExplorationSpec::slice(1).check_model(&m, &schedule).is_err());
        let d = DiscreteMultimodal::new(2, 3.0).unwrap();
        assert!(ExplorationSpec::exact().check_model(&d, &schedule).is_ok());
        assert!(ExplorationSpec::exact().with_n_expl(0).validate().is_err());
    }
}
