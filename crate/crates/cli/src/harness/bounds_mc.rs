//! Monte-Carlo dichotomy checking: many seeded train-set-evaluated runs on a
//! finite ground-truth distribution, each classified into the two arms of the
//! finite-sample bound by the exact enumeration oracle.

use crate::emit::CsvTable;
use fairsample_core::bounds::{dichotomy_check, DichotomyArm, DichotomyReport, GroundTruth};
use fairsample_core::data::{synth_uniform_mixture, DataSplit, Dataset, UniformMixtureSpec};
use fairsample_core::error::Error;
use fairsample_core::loss::MarginLossKind;
use fairsample_core::metrics::MetricKind;
use fairsample_core::rng::substream;
use fairsample_core::sampler::{self, EvalSet, Replacement, SamplerConfig, TrainerKind, UpdateMode};
use fairsample_core::Result;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsMcConfig {
    /// Generator of the finite pool that plays the ground-truth distribution.
    pub spec: UniformMixtureSpec,
    pub pool_size: usize,
    /// Initial training points drawn per group (with replacement) from the
    /// pool.
    pub n0_per_group: usize,
    /// Adaptive rounds per run (the `T` of the bound).
    pub rounds: usize,
    pub vc: usize,
    pub delta: f64,
    pub seeds: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeedArm {
    pub seed: u64,
    pub arm: String,
    pub gap: f64,
    pub bound: f64,
    pub next_round_group: usize,
    pub higher_true_loss_group: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsMcResult {
    pub config: BoundsMcConfig,
    pub per_seed: Vec<SeedArm>,
    pub within_bound: usize,
    pub samples_higher: usize,
    pub violated: usize,
    pub violation_fraction: f64,
    /// `delta + 3 sqrt(delta (1-delta) / N)`: the tolerated violation level.
    pub violation_threshold: f64,
}

/// Sample the initial per-group training points i.i.d. (with replacement)
/// from the pool, matching the ground-truth distribution the oracle uses.
fn initial_train(pool: &Dataset, n_per_group: usize, seed: u64) -> Result<Dataset> {
    let mut rng = substream(seed, "bounds-initial");
    let mut points = Vec::with_capacity(2 * n_per_group);
    for group in 0..2 {
        let candidates = pool.group_indices(group);
        if candidates.is_empty() {
            return Err(Error::Contract(format!("pool has no group-{group} points")));
        }
        for _ in 0..n_per_group {
            let idx = candidates[rng.random_range(0..candidates.len())];
            points.push(pool.point(idx).clone());
        }
    }
    Dataset::with_group_count(points, 2)
}

/// Run one seeded dichotomy experiment.
pub fn run_one(config: &BoundsMcConfig, seed: u64) -> Result<DichotomyReport> {
    let pool = synth_uniform_mixture(&config.spec, config.pool_size, seed)?;
    let train = initial_train(&pool, config.n0_per_group, seed)?;
    let split = DataSplit {
        train,
        pool: pool.clone(),
        validation: Dataset::with_group_count(vec![], 2)?,
        test: Dataset::with_group_count(vec![], 2)?,
    };
    let sampler_config = SamplerConfig {
        p: 0.0,
        rounds: config.rounds,
        update: UpdateMode::BatchRetrain,
        trainer: TrainerKind::Threshold {
            loss: MarginLossKind::Hinge,
        },
        replacement: Replacement::With,
        metric: MetricKind::ZeroOneError,
        eval_on: EvalSet::Train,
        seed,
    };
    let trace = sampler::run(&sampler_config, &split, None)?;
    dichotomy_check(
        &trace,
        &split,
        &GroundTruth::Finite(pool),
        config.vc,
        config.delta,
    )
}

/// Run the whole batch and tally arm frequencies.
pub fn check_bounds(config: &BoundsMcConfig) -> Result<BoundsMcResult> {
    if config.seeds.is_empty() {
        return Err(Error::Contract("need at least one seed".into()));
    }
    let reports: Vec<(u64, DichotomyReport)> = config
        .seeds
        .par_iter()
        .map(|&seed| Ok((seed, run_one(config, seed)?)))
        .collect::<Result<_>>()?;

    let mut within_bound = 0usize;
    let mut samples_higher = 0usize;
    let mut violated = 0usize;
    let per_seed = reports
        .iter()
        .map(|(seed, r)| {
            let arm = match r.arm {
                DichotomyArm::WithinBound => {
                    within_bound += 1;
                    "within_bound"
                }
                DichotomyArm::SamplesHigherTrueLoss => {
                    samples_higher += 1;
                    "samples_higher_true_loss"
                }
                DichotomyArm::Violated => {
                    violated += 1;
                    "violated"
                }
            };
            SeedArm {
                seed: *seed,
                arm: arm.to_string(),
                gap: r.gap,
                bound: r.bound,
                next_round_group: r.next_round_group,
                higher_true_loss_group: r.higher_true_loss_group,
            }
        })
        .collect();

    let n = config.seeds.len() as f64;
    Ok(BoundsMcResult {
        config: config.clone(),
        per_seed,
        within_bound,
        samples_higher,
        violated,
        violation_fraction: violated as f64 / n,
        violation_threshold: config.delta
            + 3.0 * (config.delta * (1.0 - config.delta) / n).sqrt(),
    })
}

impl CsvTable for BoundsMcResult {
    fn csv_header() -> &'static [&'static str] {
        &["seed", "arm", "gap", "bound"]
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.per_seed
            .iter()
            .map(|s| {
                vec![
                    s.seed.to_string(),
                    s.arm.clone(),
                    s.gap.to_string(),
                    s.bound.to_string(),
                ]
            })
            .collect()
    }
}
