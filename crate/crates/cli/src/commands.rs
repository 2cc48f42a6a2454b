use std::collections::BTreeMap;
use std::path::Path;

use nrpt::rng::{stream, Purpose};
use nrpt::theory::{expected_round_trip, round_trip_rate_formula, simulate_ele_index, simulate_pdmp, ELEChainSpec};
use nrpt::{
    nrpt_adapt, run_chain, AdaptConfig, AdaptOutput, AnnealingSchedule, ChainConfig, RunOptions, RunOutput, Scheme,
    TemperedModel,
};
use serde::Serialize;

use crate::config::RunConfig;
use crate::error::{CliError, CliResult};
use crate::models::ModelTask;
use crate::output::{ensure_dir, real, write_json, Table};

const DEFAULT_SAMPLE_SCANS: u64 = 10_000;
const DEFAULT_RUN_CHAINS: usize = 10;
const DEFAULT_THEORY_SCANS: u64 = 1_000_000;
const BARRIER_GRID: usize = 1001;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Adapt,
    Run,
    Theory,
    Logz,
}

/// Run a subcommand inside a dedicated thread pool.
pub fn execute(command: Command, config: &RunConfig) -> CliResult<()> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Config(format!("thread pool: {e}")))?;
    pool.install(|| {
        ensure_dir(&config.out)?;
        match command {
            Command::Adapt => cmd_adapt(config),
            Command::Run => cmd_run(config),
            Command::Theory => cmd_theory(config),
            Command::Logz => cmd_logz(config),
        }
    })
}

struct Adapt<'a>(&'a RunConfig);

struct Adapted {
    output: AdaptOutput,
    analytic_lambda: Option<f64>,
}

impl ModelTask for Adapt<'_> {
    type Output = Adapted;

    fn run<M: TemperedModel>(self, model: &M) -> CliResult<Adapted> {
        let c = self.0;
        let mut ac = AdaptConfig::new(c.cores, c.tune, c.scans_or(DEFAULT_SAMPLE_SCANS), c.seed);
        ac.scheme = c.scheme;
        ac.tuning_chains = c.chains;
        ac.exploration = Some(c.exploration_for(model));
        ac.options = RunOptions {
            all_pair_statistics: !c.proposed_only,
            record_samples: false,
            trace_index: false,
        };
        Ok(Adapted {
            output: nrpt_adapt(model, &ac)?,
            analytic_lambda: model.analytic().map(|a| a.global_barrier()),
        })
    }
}

#[derive(Serialize)]
struct AdaptSummary<'a> {
    #[serde(rename = "Lambda_hat")]
    lambda_hat: f64,
    tau_bound: f64,
    #[serde(rename = "N_star")]
    n_star: usize,
    k_star: usize,
    observed_tau: f64,
    #[serde(rename = "logZ")]
    log_z: f64,
    #[serde(rename = "Lambda_analytic")]
    lambda_analytic: Option<f64>,
    rounds: usize,
    sampling_schedule: &'a [f64],
    config: &'a RunConfig,
}

pub fn cmd_adapt(config: &RunConfig) -> CliResult<()> {
    let Adapted {
        output,
        analytic_lambda,
    } = config.model_spec()?.dispatch(Adapt(config))?;
    let dir = config.out.as_path();

    let mut schedule = Table::create(dir, "schedule.csv", &["round", "chain", "beta"])?;
    let tuned = output.tuned_schedule()?;
    let final_round = output.rounds.len() + 1;
    let listed = output
        .rounds
        .iter()
        .map(|r| (r.round, &r.schedule))
        .chain(std::iter::once((final_round, &tuned)));
    for (round, s) in listed {
        for (chain, &beta) in s.betas().iter().enumerate() {
            schedule.row([round.to_string(), chain.to_string(), real(beta)])?;
        }
    }
    schedule.finish()?;

    let mut rejections = Table::create(dir, "rejections.csv", &["round", "pair", "beta_lo", "beta_hi", "rhat"])?;
    for r in &output.rounds {
        let betas = r.schedule.betas();
        for (pair, &rhat) in r.rhat.iter().enumerate() {
            rejections.row([
                r.round.to_string(),
                pair.to_string(),
                real(betas[pair]),
                real(betas[pair + 1]),
                real(rhat),
            ])?;
        }
    }
    rejections.finish()?;

    let mut barrier = Table::create(dir, "barrier.csv", &["beta", "lambda_hat", "Lambda_hat"])?;
    for (beta, local, cumulative) in output.barrier.grid(BARRIER_GRID)? {
        barrier.row([real(beta), real(local), real(cumulative)])?;
    }
    barrier.finish()?;

    let summary = AdaptSummary {
        lambda_hat: output.lambda_hat(),
        tau_bound: output.plan.tau_bound,
        n_star: output.plan.n_star,
        k_star: output.plan.k_star,
        observed_tau: output.observed_tau(),
        log_z: output.log_z(),
        lambda_analytic: analytic_lambda,
        rounds: output.rounds.len(),
        sampling_schedule: output.schedule.betas(),
        config,
    };
    write_json(dir, "summary.json", &summary)
}

/// Read a schedule from CSV: either a single `beta` column, or the `round,
/// chain, beta` layout written by `adapt`, in which case the last round is used.
pub fn read_schedule(path: &Path) -> CliResult<AnnealingSchedule> {
    let mut reader = csv::Reader::from_path(path).map_err(|e| match e.into_kind() {
        csv::ErrorKind::Io(io) => CliError::io(path, io),
        other => CliError::Config(format!("{}: {other:?}", path.display())),
    })?;
    let headers = reader.headers()?.clone();
    let column = |name: &str| headers.iter().position(|h| h.trim() == name);
    let beta = column("beta")
        .ok_or_else(|| CliError::Config(format!("{}: no `beta` column", path.display())))?;
    let round = column("round");
    let mut by_round: BTreeMap<u64, Vec<f64>> = BTreeMap::new();
    for (line, record) in reader.records().enumerate() {
        let record = record?;
        let parse_err = |what: &str| CliError::Config(format!("{}: bad {what} on data row {}", path.display(), line + 1));
        let b: f64 = record
            .get(beta)
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| parse_err("beta"))?;
        let r: u64 = match round {
            Some(col) => record
                .get(col)
                .and_then(|v| v.trim().parse().ok())
                .ok_or_else(|| parse_err("round"))?,
            None => 0,
        };
        by_round.entry(r).or_default().push(b);
    }
    let (_, betas) = by_round
        .pop_last()
        .ok_or_else(|| CliError::Config(format!("{}: empty schedule", path.display())))?;
    Ok(AnnealingSchedule::new(betas)?)
}

struct Run<'a> {
    config: &'a RunConfig,
    schedule: AnnealingSchedule,
}

impl ModelTask for Run<'_> {
    type Output = RunOutput;

    fn run<M: TemperedModel>(self, model: &M) -> CliResult<RunOutput> {
        let c = self.config;
        let mut cc = ChainConfig::new(c.scheme, c.scans_or(DEFAULT_SAMPLE_SCANS), c.seed);
        cc.exploration = Some(c.exploration_for(model));
        cc.options = RunOptions {
            all_pair_statistics: !c.proposed_only,
            record_samples: true,
            trace_index: c.trace_index,
        };
        Ok(run_chain(model, &self.schedule, &cc)?)
    }
}

#[derive(Serialize)]
struct RunSummary<'a> {
    scans: u64,
    round_trips: u64,
    restarts: u64,
    observed_tau: f64,
    rejection_sum: Option<f64>,
    acceptance: Vec<f64>,
    #[serde(rename = "logZ")]
    log_z: f64,
    schedule: &'a [f64],
    config: &'a RunConfig,
}

pub fn cmd_run(config: &RunConfig) -> CliResult<()> {
    let schedule = match &config.schedule {
        Some(path) => {
            let s = read_schedule(path)?;
            if let Some(n) = config.chains {
                if n != s.n_pairs() {
                    return Err(CliError::Config(format!(
                        "--chains {n} disagrees with the {} intervals in {}",
                        s.n_pairs(),
                        path.display()
                    )));
                }
            }
            s
        }
        None => AnnealingSchedule::uniform(config.chains.unwrap_or(DEFAULT_RUN_CHAINS))?,
    };
    let out = config.model_spec()?.dispatch(Run {
        config,
        schedule: schedule.clone(),
    })?;
    let dir = config.out.as_path();

    let dim = out.samples.first().map_or(0, Vec::len);
    let header: Vec<String> = std::iter::once("scan".to_string())
        .chain((0..dim).map(|j| format!("x{j}")))
        .collect();
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    let mut samples = Table::create(dir, "samples.csv", &header)?;
    for (k, x) in out.samples.iter().enumerate() {
        let scan = out.start_scan + k as u64 + 1;
        samples.row(std::iter::once(scan.to_string()).chain(x.iter().map(|&v| real(v))))?;
    }
    samples.finish()?;

    let mut trips = Table::create(dir, "trips.csv", &["machine", "trip_index", "start_scan", "end_scan"])?;
    let mut per_machine = vec![0u64; schedule.len()];
    for t in out.ledger.trips() {
        let idx = per_machine[t.machine];
        per_machine[t.machine] += 1;
        trips.row([
            t.machine.to_string(),
            idx.to_string(),
            t.start_scan.to_string(),
            t.end_scan.to_string(),
        ])?;
    }
    trips.finish()?;

    if config.trace_index {
        let mut trace = Table::create(dir, "index_trace.csv", &["scan", "machine", "index", "epsilon"])?;
        for r in &out.index_trace {
            trace.row([
                r.scan.to_string(),
                r.machine.to_string(),
                r.index.to_string(),
                r.epsilon.to_string(),
            ])?;
        }
        trace.finish()?;
    }

    let summary = RunSummary {
        scans: out.n_scans,
        round_trips: out.ledger.total_round_trips(),
        restarts: out.ledger.total_restarts(),
        observed_tau: out.round_trip_rate(),
        rejection_sum: out.rejection.rhat().ok().map(|r| r.iter().sum()),
        acceptance: out.rejection.acceptance_rates(),
        log_z: nrpt::log_partition_ratio(&out.energy, &schedule)?,
        schedule: schedule.betas(),
        config,
    };
    write_json(dir, "summary.json", &summary)
}

struct TheoryParams {
    n: usize,
    s: f64,
    rate: f64,
    horizon: f64,
}

impl TheoryParams {
    fn from_config(config: &RunConfig) -> CliResult<Self> {
        if let Some(k) = config.params.keys().find(|k| !["n", "s", "rate", "horizon"].contains(&k.as_str())) {
            return Err(CliError::Config(format!("theory: unknown parameter `{k}`")));
        }
        let n = config.param("n", 8.0);
        if !(n >= 1.0 && n.fract() == 0.0) {
            return Err(CliError::Config(format!("theory: `n` must be a positive integer, got {n}")));
        }
        let p = Self {
            n: n as usize,
            s: config.param("s", 0.8),
            rate: config.param("rate", 2.0),
            horizon: config.param("horizon", 1e5),
        };
        if !(p.rate > 0.0 && p.rate.is_finite()) {
            return Err(CliError::Config(format!("theory: `rate` must be positive, got {}", p.rate)));
        }
        Ok(p)
    }
}

pub fn cmd_theory(config: &RunConfig) -> CliResult<()> {
    let p = TheoryParams::from_config(config)?;
    let scans = config.scans_or(DEFAULT_THEORY_SCANS);
    let mut table = Table::create(&config.out, "theory.csv", &["case", "quantity", "formula", "simulated"])?;

    let cases = [
        ("deo", ELEChainSpec::constant(p.n, p.s, Scheme::Deo)?),
        ("seo", ELEChainSpec::constant(p.n, p.s, Scheme::Seo)?),
        ("deo_rejection_free", ELEChainSpec::constant(p.n, 1.0, Scheme::Deo)?),
    ];
    for (k, (case, spec)) in cases.iter().enumerate() {
        let mut rng = stream(config.seed, Purpose::Oracle, k as u64);
        let sim = simulate_ele_index(spec, scans, &mut rng)?;
        let mean_trip = sim.mean_trip().map_or(f64::NAN, |(m, _)| m);
        table.row([*case, "tau", &real(round_trip_rate_formula(spec)), &real(sim.tau())])?;
        table.row([*case, "mean_trip", &real(expected_round_trip(spec)), &real(mean_trip)])?;
    }

    let mut rng = stream(config.seed, Purpose::Oracle, cases.len() as u64);
    let rate = p.rate;
    let path = simulate_pdmp(|_| rate, rate, p.horizon, (0.0, 1), &mut rng)?;
    let flips = path.inter_flip_times();
    let trips = path.round_trip_times();
    let occupation = path.occupation_samples(1.0)?;
    table.row(["pdmp", "mean_inter_flip", &real(1.0 / rate), &real(mean(&flips))])?;
    table.row(["pdmp", "mean_round_trip", &real(2.0 + 2.0 * rate), &real(mean(&trips))])?;
    table.row(["pdmp", "mean_position", &real(0.5), &real(mean(&occupation))])?;
    table.finish()
}

fn mean(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        f64::NAN
    } else {
        xs.iter().sum::<f64>() / xs.len() as f64
    }
}

pub fn cmd_logz(config: &RunConfig) -> CliResult<()> {
    let Adapted { output, .. } = config.model_spec()?.dispatch(Adapt(config))?;
    let mut table = Table::create(&config.out, "logz.csv", &["round", "estimate"])?;
    for r in &output.rounds {
        table.row([r.round.to_string(), real(r.log_z)])?;
    }
    table.finish()
}
