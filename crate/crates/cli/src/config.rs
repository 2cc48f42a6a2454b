use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use nrpt::{ExplorationKind, ExplorationSpec, Scheme, TemperedModel};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};
use crate::models::ModelSpec;

/// Settings as read from a config file or the command line; unset fields fall
/// back to defaults in [`PartialConfig::finish`].
#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartialConfig {
    pub model: Option<String>,
    #[serde(default)]
    pub params: BTreeMap<String, f64>,
    pub scheme: Option<Scheme>,
    pub chains: Option<usize>,
    pub cores: Option<usize>,
    pub scans: Option<u64>,
    pub tune: Option<u64>,
    pub nexpl: Option<usize>,
    pub exploration: Option<ExplorationKind>,
    pub step_size: Option<f64>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub trace_index: Option<bool>,
    pub proposed_only: Option<bool>,
    pub schedule: Option<PathBuf>,
    pub threads: Option<usize>,
}

impl PartialConfig {
    pub fn from_toml_file(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Ok(toml::from_str(&text)?)
    }

    /// Fields set in `other` win; parameter maps are merged key by key.
    pub fn merge(mut self, other: PartialConfig) -> Self {
        macro_rules! take {
            ($($f:ident),*) => { $( if other.$f.is_some() { self.$f = other.$f; } )* };
        }
        take!(
            model,
            scheme,
            chains,
            cores,
            scans,
            tune,
            nexpl,
            exploration,
            step_size,
            seed,
            out,
            trace_index,
            proposed_only,
            schedule,
            threads
        );
        self.params.extend(other.params);
        self
    }

    pub fn finish(self) -> CliResult<RunConfig> {
        let seed = self
            .seed
            .ok_or_else(|| CliError::Config("a seed is required (--seed or `seed` in the config)".into()))?;
        let config = RunConfig {
            model: self.model.unwrap_or_else(|| "gaussian".into()),
            params: self.params,
            scheme: self.scheme.unwrap_or(Scheme::Deo),
            chains: self.chains,
            cores: self.cores.unwrap_or(8),
            scans: self.scans,
            tune: self.tune.unwrap_or(1024),
            nexpl: self.nexpl,
            exploration: self.exploration,
            step_size: self.step_size,
            seed,
            out: self.out.unwrap_or_else(|| PathBuf::from("out")),
            trace_index: self.trace_index.unwrap_or(false),
            proposed_only: self.proposed_only.unwrap_or(false),
            schedule: self.schedule,
            threads: self.threads,
        };
        config.validate()?;
        Ok(config)
    }
}

/// Fully resolved settings; echoed into `summary.json`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub model: String,
    pub params: BTreeMap<String, f64>,
    pub scheme: Scheme,
    /// `N`: runs use `N + 1` chains. Adaptation tunes with `N̄` when unset.
    pub chains: Option<usize>,
    /// `N̄` for adaptation.
    pub cores: usize,
    /// Sampling or simulation length; each subcommand has its own default.
    pub scans: Option<u64>,
    pub tune: u64,
    pub nexpl: Option<usize>,
    pub exploration: Option<ExplorationKind>,
    pub step_size: Option<f64>,
    pub seed: u64,
    pub out: PathBuf,
    pub trace_index: bool,
    pub proposed_only: bool,
    pub schedule: Option<PathBuf>,
    pub threads: Option<usize>,
}

impl RunConfig {
    fn validate(&self) -> CliResult<()> {
        let positive = [
            ("chains", self.chains.map_or(1, |c| c as u64)),
            ("cores", self.cores as u64),
            ("scans", self.scans.unwrap_or(1)),
            ("tune", self.tune),
        ];
        if let Some((name, _)) = positive.iter().find(|(_, v)| *v == 0) {
            return Err(CliError::Config(format!("`{name}` must be positive")));
        }
        if self.nexpl == Some(0) {
            return Err(CliError::Config("`nexpl` must be positive".into()));
        }
        if self.threads == Some(0) {
            return Err(CliError::Config("`threads` must be positive".into()));
        }
        Ok(())
    }

    pub fn model_spec(&self) -> CliResult<ModelSpec> {
        ModelSpec::parse(&self.model, &self.params)
    }

    /// The model's default kernel with any configured overrides applied.
    pub fn exploration_for<M: TemperedModel>(&self, model: &M) -> ExplorationSpec {
        let mut spec = model.default_exploration();
        if let Some(kind) = self.exploration {
            spec.kind = kind;
        }
        if let Some(n) = self.nexpl {
            spec.n_expl = n;
        }
        if let Some(step) = self.step_size {
            spec.step_size = step;
        }
        spec
    }

    pub fn scans_or(&self, default: u64) -> u64 {
        self.scans.unwrap_or(default)
    }

    pub fn param(&self, key: &str, default: f64) -> f64 {
        self.params.get(key).copied().unwrap_or(default)
    }
}
