use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use nrpt::{ExplorationKind, Scheme};
use nrpt_cli::{execute, CliError, CliResult, Command, PartialConfig};

#[derive(Parser)]
#[command(name = "nrpt", version, about = "Non-reversible parallel tempering")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Tune the schedule over doubling rounds, then sample with the planned ensemble.
    Adapt(Flags),
    /// Run PT on a fixed schedule.
    Run(Flags),
    /// Compare round-trip closed forms with simulation.
    Theory(Flags),
    /// Log-normalizer estimate after each tuning round.
    Logz(Flags),
}

#[derive(Args)]
struct Flags {
    /// TOML config; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    model: Option<String>,
    /// Model or theory parameter, repeatable.
    #[arg(long = "param", value_name = "KEY=VALUE", value_parser = parse_param)]
    params: Vec<(String, f64)>,
    #[arg(long)]
    scheme: Option<Scheme>,
    /// Number of intervals N (N + 1 chains).
    #[arg(long)]
    chains: Option<usize>,
    #[arg(long)]
    cores: Option<usize>,
    #[arg(long)]
    scans: Option<u64>,
    #[arg(long)]
    tune: Option<u64>,
    #[arg(long)]
    nexpl: Option<usize>,
    #[arg(long, value_parser = parse_exploration)]
    exploration: Option<ExplorationKind>,
    #[arg(long)]
    step_size: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    trace_index: bool,
    /// Estimate rejections from proposed pairs only.
    #[arg(long)]
    proposed_only: bool,
    #[arg(long)]
    schedule: Option<PathBuf>,
    #[arg(long)]
    threads: Option<usize>,
}

fn parse_param(s: &str) -> Result<(String, f64), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected KEY=VALUE, got `{s}`"))?;
    let v: f64 = v.trim().parse().map_err(|e| format!("`{v}`: {e}"))?;
    Ok((k.trim().to_string(), v))
}

fn parse_exploration(s: &str) -> Result<ExplorationKind, String> {
    match s {
        "exact_reference" => Ok(ExplorationKind::ExactReference),
        "rwmh" => Ok(ExplorationKind::Rwmh),
        "slice" => Ok(ExplorationKind::Slice),
        "model_specific" => Ok(ExplorationKind::ModelSpecific),
        _ => Err("expected one of exact_reference, rwmh, slice, model_specific".into()),
    }
}

impl Flags {
    fn resolve(self) -> CliResult<nrpt_cli::RunConfig> {
        let base = match &self.config {
            Some(path) => PartialConfig::from_toml_file(path)?,
            None => PartialConfig::default(),
        };
        let overrides = PartialConfig {
            model: self.model,
            params: self.params.into_iter().collect::<BTreeMap<_, _>>(),
            scheme: self.scheme,
            chains: self.chains,
            cores: self.cores,
            scans: self.scans,
            tune: self.tune,
            nexpl: self.nexpl,
            exploration: self.exploration,
            step_size: self.step_size,
            seed: self.seed,
            out: self.out,
            trace_index: self.trace_index.then_some(true),
            proposed_only: self.proposed_only.then_some(true),
            schedule: self.schedule,
            threads: self.threads,
        };
        base.merge(overrides).finish()
    }
}

fn main() -> ExitCode {
    let (command, flags) = match Cli::parse().command {
        Sub::Adapt(f) => (Command::Adapt, f),
        Sub::Run(f) => (Command::Run, f),
        Sub::Theory(f) => (Command::Theory, f),
        Sub::Logz(f) => (Command::Logz, f),
    };
    match flags.resolve().and_then(|config| execute(command, &config)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &CliError) -> u8 {
    e.exit_code() as u8
}
