use std::collections::BTreeMap;

use nrpt::{
    DiscreteMultimodal, FlatLikelihood, GaussianMixturePosterior, GaussianModel, IsingModel, SymmetricBimodal,
    TemperedModel,
};

use crate::error::{CliError, CliResult};

/// A model selected by name, with its parameters resolved against defaults.
#[derive(Clone, Debug, PartialEq)]
pub enum ModelSpec {
    Gaussian { dim: usize, sigma0: f64, sigma: f64 },
    Discrete { k: usize, a: f64 },
    Ising { side: usize, field: f64 },
    Mixture { n_obs: usize, separation: f64, prior_sd: f64, data_seed: u64 },
    Flat { dim: usize },
    Bimodal { location: f64, sigma0: f64, sigma: f64 },
}

/// Work that needs the concrete model type.
pub trait ModelTask {
    type Output;
    fn run<M: TemperedModel>(self, model: &M) -> CliResult<Self::Output>;
}

struct Params<'a> {
    model: &'a str,
    values: BTreeMap<String, f64>,
}

impl Params<'_> {
    fn real(&mut self, key: &str, default: f64) -> f64 {
        self.values.remove(key).unwrap_or(default)
    }

    fn count(&mut self, key: &str, default: usize) -> CliResult<usize> {
        match self.values.remove(key) {
            None => Ok(default),
            Some(v) if v >= 0.0 && v.fract() == 0.0 && v <= u32::MAX as f64 => Ok(v as usize),
            Some(v) => Err(CliError::Config(format!(
                "{}: parameter `{key}` must be a nonnegative integer, got {v}",
                self.model
            ))),
        }
    }

    fn finish(self) -> CliResult<()> {
        match self.values.keys().next() {
            None => Ok(()),
            Some(k) => Err(CliError::Config(format!("{}: unknown parameter `{k}`", self.model))),
        }
    }
}

impl ModelSpec {
    pub const NAMES: [&'static str; 6] = ["gaussian", "discrete", "ising", "mixture", "flat", "bimodal"];

    pub fn parse(name: &str, params: &BTreeMap<String, f64>) -> CliResult<Self> {
        let mut p = Params {
            model: name,
            values: params.clone(),
        };
        let spec = match name {
            "gaussian" => ModelSpec::Gaussian {
                dim: p.count("dim", 1)?,
                sigma0: p.real("sigma0", 1.0),
                sigma: p.real("sigma", 0.5),
            },
            "discrete" => ModelSpec::Discrete {
                k: p.count("k", 2)?,
                a: p.real("a", 3.0),
            },
            "ising" => ModelSpec::Ising {
                side: p.count("side", 10)?,
                field: p.real("field", 0.0),
            },
            "mixture" => ModelSpec::Mixture {
                n_obs: p.count("n_obs", 20)?,
                separation: p.real("separation", 4.0),
                prior_sd: p.real("prior_sd", 5.0),
                data_seed: p.count("data_seed", 1)? as u64,
            },
            "flat" => ModelSpec::Flat {
                dim: p.count("dim", 1)?,
            },
            "bimodal" => ModelSpec::Bimodal {
                location: p.real("location", 3.0),
                sigma0: p.real("sigma0", 1.0),
                sigma: p.real("sigma", 0.5),
            },
            other => {
                return Err(CliError::Config(format!(
                    "unknown model `{other}` (expected one of {})",
                    Self::NAMES.join(", ")
                )))
            }
        };
        p.finish()?;
        // Surface invalid parameters before any work starts.
        spec.dispatch(Validate)?;
        Ok(spec)
    }

    pub fn dispatch<T: ModelTask>(&self, task: T) -> CliResult<T::Output> {
        match *self {
            ModelSpec::Gaussian { dim, sigma0, sigma } => task.run(&GaussianModel::new(dim, sigma0, sigma)?),
            ModelSpec::Discrete { k, a } => task.run(&DiscreteMultimodal::new(k, a)?),
            ModelSpec::Ising { side, field } => task.run(&IsingModel::new(side, field)?),
            ModelSpec::Mixture {
                n_obs,
                separation,
                prior_sd,
                data_seed,
            } => task.run(&GaussianMixturePosterior::synthetic(n_obs, separation, prior_sd, data_seed)?),
            ModelSpec::Flat { dim } => task.run(&FlatLikelihood::new(dim)?),
            ModelSpec::Bimodal {
                location,
                sigma0,
                sigma,
            } => task.run(&SymmetricBimodal::new(location, sigma0, sigma)?),
        }
    }
}

struct Validate;

impl ModelTask for Validate {
    type Output = ();
    fn run<M: TemperedModel>(self, _model: &M) -> CliResult<()> {
        Ok(())
    }
}
