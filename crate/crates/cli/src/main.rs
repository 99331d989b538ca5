//! `fairsample`: adaptive-sampling experiments from the command line.

use clap::{Args, Parser, Subcommand};
use fairsample_cli::emit::{emit, OutFormat};
use fairsample_cli::harness::{
    analytic::{analytic_report, AnalyticConfig},
    bounds_mc::{check_bounds, BoundsMcConfig},
    oned::{run_oned_scenario, OnedConfig},
    replay::{run_replay, ReplayConfig, STRATEGY_NAMES},
    source::{desk_scale_wards, full_scale_wards, DataSource},
    sweep::{default_p_grid, sweep_pareto, SweepConfig},
};
use fairsample_core::analytic::{Marginal, MarginalPair};
use fairsample_core::data::{CsvSchema, GaussianMixtureSpec, LabelMap, SplitSizes, UniformMixtureSpec};
use fairsample_core::error::Error;
use fairsample_core::loss::MarginLossKind;
use fairsample_core::metrics::MetricKind;
use fairsample_core::model::LogisticConfig;
use fairsample_core::sampler::{LrSchedule, Replacement, TrainerKind, UpdateMode};
use fairsample_core::Result;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "fairsample",
    version,
    about = "Adaptive sampling for balanced classifier performance across groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact 1-D analysis: fair threshold, minimizer curve, recurrence trace
    #[command(name = "analytic1d")]
    Analytic1d(Analytic1dArgs),
    /// Pareto sweep of error vs fairness violation over the coin probability
    Sweep(SweepArgs),
    /// Sequential replay comparing pool ordering strategies
    Replay(ReplayArgs),
    /// 1-D SGD scenario with analytic overlays
    Oned(OnedArgs),
    /// Monte-Carlo check of the finite-sample dichotomy bound
    CheckBounds(CheckBoundsArgs),
}

#[derive(Args)]
struct OutArgs {
    /// Output file (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format: json or csv
    #[arg(long, default_value = "json")]
    format: String,
}

impl OutArgs {
    fn format(&self) -> Result<OutFormat> {
        self.format.parse()
    }
}

#[derive(Args)]
struct UniformSpecArgs {
    #[arg(long, default_value_t = 0.0)]
    alpha0: f64,
    #[arg(long, default_value_t = 10.0)]
    beta0: f64,
    #[arg(long, default_value_t = 4.0)]
    t0: f64,
    #[arg(long, default_value_t = 1.0)]
    alpha1: f64,
    #[arg(long, default_value_t = 14.0)]
    beta1: f64,
    #[arg(long, default_value_t = 7.0)]
    t1: f64,
    #[arg(long, default_value_t = 0.5)]
    lambda_star: f64,
}

impl UniformSpecArgs {
    fn spec(&self) -> Result<UniformMixtureSpec> {
        UniformMixtureSpec::new(
            self.alpha0,
            self.beta0,
            self.t0,
            self.alpha1,
            self.beta1,
            self.t1,
            self.lambda_star,
        )
    }
}

#[derive(Args)]
struct CsvArgs {
    /// CSV dataset path (synthetic data when omitted)
    #[arg(long)]
    data: Option<PathBuf>,
    #[arg(long, default_value = "label")]
    label_col: String,
    #[arg(long, default_value = "group")]
    group_col: String,
    /// Comma-separated feature column names
    #[arg(long, default_value = "x")]
    feature_cols: String,
    #[arg(long)]
    timestamp_col: Option<String>,
    /// Label value mapping, e.g. neg=0,pos=1
    #[arg(long, default_value = "neg=0,pos=1")]
    label_map: String,
    /// Field delimiter
    #[arg(long, default_value = ",")]
    delimiter: String,
}

impl CsvArgs {
    fn source(&self) -> Result<Option<DataSource>> {
        let Some(path) = &self.data else {
            return Ok(None);
        };
        let delimiter = self.delimiter.as_bytes();
        if delimiter.len() != 1 {
            return Err(Error::Contract("delimiter must be one byte".into()));
        }
        let schema = CsvSchema {
            label_col: self.label_col.clone(),
            group_col: self.group_col.clone(),
            feature_cols: self
                .feature_cols
                .split(',')
                .map(|s| s.trim().to_string())
                .filter(|s| !s.is_empty())
                .collect(),
            timestamp_col: self.timestamp_col.clone(),
            label_map: LabelMap::parse(&self.label_map)?,
            delimiter: delimiter[0],
        };
        Ok(Some(DataSource::Csv {
            path: path.clone(),
            schema,
        }))
    }
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(|v| v.trim())
        .filter(|v| !v.is_empty())
        .map(|v| {
            v.parse::<T>()
                .map_err(|_| Error::Contract(format!("bad {what} entry {v:?}")))
        })
        .collect()
}

fn metric_from(name: &str) -> Result<MetricKind> {
    MetricKind::from_cli_name(name)
        .ok_or_else(|| Error::Contract(format!("unknown metric {name:?}; use 01, eqopp, eqodds, or stat-parity")))
}

fn loss_from(name: &str) -> Result<MarginLossKind> {
    MarginLossKind::from_cli_name(name)
        .ok_or_else(|| Error::Contract(format!("unknown loss {name:?}; use hinge or logistic")))
}

fn load_config<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text)
        .map_err(|e| Error::Contract(format!("bad config {}: {e}", path.display())))
}

#[derive(Args)]
struct Analytic1dArgs {
    #[command(flatten)]
    spec: UniformSpecArgs,
    #[arg(long, default_value_t = 0.0)]
    p: f64,
    #[arg(long, default_value_t = 100_000)]
    rounds: usize,
    #[arg(long, default_value_t = 50)]
    n0: usize,
    #[arg(long, default_value_t = 101)]
    curve_samples: usize,
    #[arg(long, default_value_t = 1_000)]
    trace_every: usize,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct SweepArgs {
    /// Full sweep config as a JSON file (overrides the inline flags)
    #[arg(long)]
    config: Option<PathBuf>,
    #[command(flatten)]
    csv: CsvArgs,
    /// Synthetic source when no CSV is given: uniform, gaussian, or wards
    #[arg(long, default_value = "uniform")]
    synth: String,
    #[command(flatten)]
    spec: UniformSpecArgs,
    /// Synthetic dataset size for the mixture sources
    #[arg(long, default_value_t = 12_000)]
    n: usize,
    /// Number of evenly spaced p values over [0, 1]
    #[arg(long, default_value_t = 100)]
    p_count: usize,
    /// Explicit comma-separated p grid (overrides --p-count)
    #[arg(long)]
    p_grid: Option<String>,
    /// Number of seeds 0..N
    #[arg(long, default_value_t = 10)]
    seeds: usize,
    #[arg(long, default_value_t = 60)]
    train: usize,
    #[arg(long, default_value_t = 6_000)]
    pool: usize,
    #[arg(long, default_value_t = 2_000)]
    val: usize,
    #[arg(long, default_value_t = 2_000)]
    test: usize,
    #[arg(long, default_value_t = 500)]
    rounds: usize,
    #[arg(long, default_value = "01")]
    metric: String,
    /// threshold or logistic
    #[arg(long, default_value = "threshold")]
    trainer: String,
    /// Loss for the threshold trainer
    #[arg(long, default_value = "hinge")]
    loss: String,
    /// batch or sgd
    #[arg(long, default_value = "batch")]
    update: String,
    #[arg(long, default_value_t = 1.0)]
    lr_scale: f64,
    /// with or without
    #[arg(long, default_value = "without")]
    replacement: String,
    #[arg(long, default_value_t = 0)]
    data_seed: u64,
    #[command(flatten)]
    out: OutArgs,
}

impl SweepArgs {
    fn to_config(&self) -> Result<SweepConfig> {
        if let Some(path) = &self.config {
            return load_config(path);
        }
        let source = match self.csv.source()? {
            Some(source) => source,
            None => match self.synth.as_str() {
                "uniform" => DataSource::UniformMixture {
                    spec: self.spec.spec()?,
                    n: self.n,
                },
                "gaussian" => DataSource::GaussianMixture {
                    spec: GaussianMixtureSpec::new(0.0, 1.0, 0.0, 2.0, 2.0, 1.4, 0.85)?,
                    n: self.n,
                },
                "wards" => DataSource::Wards {
                    spec: desk_scale_wards(),
                },
                other => {
                    return Err(Error::Contract(format!(
                        "unknown synthetic source {other:?}"
                    )))
                }
            },
        };
        let p_grid = match &self.p_grid {
            Some(list) => parse_list(list, "p")?,
            None => {
                if self.p_count < 2 {
                    return Err(Error::Contract("p-count must be >= 2".into()));
                }
                if self.p_count == 100 {
                    default_p_grid()
                } else {
                    (0..self.p_count)
                        .map(|i| i as f64 / (self.p_count - 1) as f64)
                        .collect()
                }
            }
        };
        let update = match self.update.as_str() {
            "batch" => UpdateMode::BatchRetrain,
            "sgd" => UpdateMode::SgdUpdate {
                schedule: LrSchedule {
                    scale: self.lr_scale,
                },
            },
            other => return Err(Error::Contract(format!("unknown update mode {other:?}"))),
        };
        let trainer = match self.trainer.as_str() {
            "threshold" => TrainerKind::Threshold {
                loss: loss_from(&self.loss)?,
            },
            "logistic" => TrainerKind::Logistic {
                config: LogisticConfig::default(),
            },
            other => return Err(Error::Contract(format!("unknown trainer {other:?}"))),
        };
        let replacement = match self.replacement.as_str() {
            "with" => Replacement::With,
            "without" => Replacement::Without,
            other => return Err(Error::Contract(format!("unknown replacement {other:?}"))),
        };
        Ok(SweepConfig {
            source,
            data_seed: self.data_seed,
            p_grid,
            seeds: (0..self.seeds as u64).collect(),
            sizes: SplitSizes {
                train: self.train,
                pool: self.pool,
                validation: self.val,
                test: self.test,
            },
            rounds: self.rounds,
            metric: metric_from(&self.metric)?,
            update,
            trainer,
            replacement,
        })
    }
}

#[derive(Args)]
struct ReplayArgs {
    /// Full replay config as a JSON file (overrides the inline flags)
    #[arg(long)]
    config: Option<PathBuf>,
    #[command(flatten)]
    csv: CsvArgs,
    /// Comma-separated strategies: timestamp, random, adaptive
    #[arg(long, default_value = "timestamp,random,adaptive")]
    strategies: String,
    #[arg(long, default_value_t = 4)]
    seeds: usize,
    #[arg(long, default_value_t = 200)]
    train: usize,
    #[arg(long, default_value_t = 1_000)]
    val: usize,
    #[arg(long, default_value_t = 5_000)]
    test: usize,
    /// Refit cadence in rounds (0 = auto)
    #[arg(long, default_value_t = 0)]
    retrain_every: usize,
    #[arg(long)]
    max_rounds: Option<usize>,
    #[arg(long, default_value = "01")]
    metric: String,
    #[arg(long, default_value_t = 0)]
    data_seed: u64,
    #[command(flatten)]
    out: OutArgs,
}

impl ReplayArgs {
    fn to_config(&self) -> Result<ReplayConfig> {
        if let Some(path) = &self.config {
            return load_config(path);
        }
        let source = match self.csv.source()? {
            Some(source) => source,
            None => DataSource::Wards {
                spec: full_scale_wards(),
            },
        };
        let strategies: Vec<String> = self
            .strategies
            .split(',')
            .map(|s| s.trim().to_string())
            .filter(|s| !s.is_empty())
            .collect();
        for s in &strategies {
            if !STRATEGY_NAMES.contains(&s.as_str()) {
                return Err(Error::Contract(format!(
                    "unknown strategy {s:?}; available: {}",
                    STRATEGY_NAMES.join(", ")
                )));
            }
        }
        Ok(ReplayConfig {
            source,
            data_seed: self.data_seed,
            strategies,
            seeds: (0..self.seeds as u64).collect(),
            train_size: self.train,
            validation_size: self.val,
            test_size: self.test,
            retrain_every: self.retrain_every,
            logistic: LogisticConfig::default(),
            metric: metric_from(&self.metric)?,
            max_rounds: self.max_rounds,
        })
    }
}

#[derive(Args)]
struct OnedArgs {
    /// Full scenario config as a JSON file (overrides the inline flags)
    #[arg(long)]
    config: Option<PathBuf>,
    /// uniform or gaussian marginals
    #[arg(long, default_value = "gaussian")]
    dist: String,
    #[arg(long, default_value_t = 0.0)]
    mean0: f64,
    #[arg(long, default_value_t = 1.0)]
    var0: f64,
    #[arg(long, default_value_t = 2.0)]
    mean1: f64,
    #[arg(long, default_value_t = 2.0)]
    var1: f64,
    #[arg(long, default_value_t = 0.0)]
    lo0: f64,
    #[arg(long, default_value_t = 10.0)]
    hi0: f64,
    #[arg(long, default_value_t = 6.0)]
    lo1: f64,
    #[arg(long, default_value_t = 12.0)]
    hi1: f64,
    /// Group thresholds (defaults: gaussian 0 and 1.4, uniform 7 and 9)
    #[arg(long)]
    t0: Option<f64>,
    #[arg(long)]
    t1: Option<f64>,
    #[arg(long, default_value_t = 0.85)]
    lambda_star: f64,
    #[arg(long, default_value = "hinge")]
    loss: String,
    #[arg(long, default_value_t = 0.0)]
    p: f64,
    /// Total validation size, split evenly between the groups
    #[arg(long, default_value_t = 20_000)]
    validation: usize,
    #[arg(long, default_value_t = 5_000)]
    rounds: usize,
    #[arg(long, default_value_t = 1.0)]
    lr_scale: f64,
    #[arg(long, default_value_t = 50)]
    n0: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 10)]
    record_every: usize,
    #[command(flatten)]
    out: OutArgs,
}

impl OnedArgs {
    fn to_config(&self) -> Result<OnedConfig> {
        if let Some(path) = &self.config {
            return load_config(path);
        }
        let pair = match self.dist.as_str() {
            "gaussian" => MarginalPair::new(
                Marginal::Gaussian {
                    mean: self.mean0,
                    var: self.var0,
                },
                self.t0.unwrap_or(0.0),
                Marginal::Gaussian {
                    mean: self.mean1,
                    var: self.var1,
                },
                self.t1.unwrap_or(1.4),
                self.lambda_star,
            )?,
            "uniform" => MarginalPair::new(
                Marginal::Uniform {
                    lo: self.lo0,
                    hi: self.hi0,
                },
                self.t0.unwrap_or(7.0),
                Marginal::Uniform {
                    lo: self.lo1,
                    hi: self.hi1,
                },
                self.t1.unwrap_or(9.0),
                self.lambda_star,
            )?,
            other => return Err(Error::Contract(format!("unknown dist {other:?}"))),
        };
        Ok(OnedConfig {
            pair,
            loss: loss_from(&self.loss)?,
            p: self.p,
            validation_per_group: (self.validation / 2).max(1),
            rounds: self.rounds,
            lr: LrSchedule {
                scale: self.lr_scale,
            },
            n0: self.n0,
            seed: self.seed,
            record_every: self.record_every,
        })
    }
}

#[derive(Args)]
struct CheckBoundsArgs {
    #[command(flatten)]
    spec: UniformSpecArgs,
    #[arg(long, default_value_t = 4_000)]
    pool_size: usize,
    #[arg(long, default_value_t = 25)]
    n0_per_group: usize,
    #[arg(long, default_value_t = 200)]
    rounds: usize,
    #[arg(long, default_value_t = 1)]
    vc: usize,
    #[arg(long, default_value_t = 0.05)]
    delta: f64,
    #[arg(long, default_value_t = 200)]
    seeds: usize,
    #[command(flatten)]
    out: OutArgs,
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Analytic1d(args) => {
            let config = AnalyticConfig {
                spec: args.spec.spec()?,
                p: args.p,
                rounds: args.rounds,
                n0: args.n0,
                curve_samples: args.curve_samples,
                trace_every: args.trace_every,
            };
            let report = analytic_report(&config)?;
            emit(&report, args.out.format()?, args.out.out.as_deref())
        }
        Command::Sweep(args) => {
            let config = args.to_config()?;
            let result = sweep_pareto(&config)?;
            emit(&result, args.out.format()?, args.out.out.as_deref())
        }
        Command::Replay(args) => {
            let config = args.to_config()?;
            let result = run_replay(&config)?;
            emit(&result, args.out.format()?, args.out.out.as_deref())
        }
        Command::Oned(args) => {
            let config = args.to_config()?;
            let result = run_oned_scenario(&config)?;
            emit(&result, args.out.format()?, args.out.out.as_deref())
        }
        Command::CheckBounds(args) => {
            let config = BoundsMcConfig {
                spec: args.spec.spec()?,
                pool_size: args.pool_size,
                n0_per_group: args.n0_per_group,
                rounds: args.rounds,
                vc: args.vc,
                delta: args.delta,
                seeds: (0..args.seeds as u64).collect(),
            };
            let result = check_bounds(&config)?;
            emit(&result, args.out.format()?, args.out.out.as_deref())
        }
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = dispatch(cli) {
        eprintln!("error: {e}");
        // contract violations exit 2, I/O failures exit 1
        std::process::exit(if e.is_contract() { 2 } else { 1 });
    }
}
