//! Pareto sweeps over the accuracy/fairness trade-off probability.

use super::source::DataSource;
use crate::emit::CsvTable;
use fairsample_core::data::{carve_holdout, split, DataSplit, Dataset, SplitSizes};
use fairsample_core::error::Error;
use fairsample_core::metrics::{self, MetricKind};
use fairsample_core::sampler::{self, EvalSet, Replacement, SamplerConfig, TrainerKind, UpdateMode};
use fairsample_core::Result;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// 100 evenly spaced probabilities over [0, 1].
pub fn default_p_grid() -> Vec<f64> {
    (0..100).map(|i| i as f64 / 99.0).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub source: DataSource,
    /// Seed fixing the dataset and the shared test holdout.
    pub data_seed: u64,
    pub p_grid: Vec<f64>,
    pub seeds: Vec<u64>,
    /// `test` is carved once and shared by every seed; `train`, `pool`, and
    /// `validation` are re-split per seed.
    pub sizes: SplitSizes,
    pub rounds: usize,
    pub metric: MetricKind,
    pub update: UpdateMode,
    pub trainer: TrainerKind,
    pub replacement: Replacement,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.p_grid.is_empty() || self.seeds.is_empty() {
            return Err(Error::Contract("need at least one p and one seed".into()));
        }
        if self.p_grid.iter().any(|p| !(0.0..=1.0).contains(p)) {
            return Err(Error::Contract("p grid values must lie in [0,1]".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeedOutcome {
    pub seed: u64,
    pub error: f64,
    pub violation: f64,
}

/// One sweep cell aggregated over seeds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrontierPoint {
    pub p: f64,
    pub mean_error: f64,
    pub mean_violation: f64,
    pub per_seed: Vec<SeedOutcome>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub config: SweepConfig,
    /// Every evaluated (p, error, violation) point, ordered by p.
    pub points: Vec<FrontierPoint>,
    /// The dominance antichain among `points`, ordered by error.
    pub frontier: Vec<FrontierPoint>,
}

fn run_cell(
    p: f64,
    seed: u64,
    split: &DataSplit,
    test: &Dataset,
    config: &SweepConfig,
) -> Result<SeedOutcome> {
    let sampler_config = SamplerConfig {
        p,
        rounds: config.rounds,
        update: config.update,
        trainer: config.trainer,
        replacement: config.replacement,
        metric: config.metric,
        eval_on: EvalSet::Validation,
        seed,
    };
    let trace = sampler::run(&sampler_config, split, None)?;
    Ok(SeedOutcome {
        seed,
        error: metrics::overall_error(&trace.final_model, test)?,
        violation: metrics::disparity(config.metric, &trace.final_model, test)?,
    })
}

/// Run the full sweep: identical per-seed splits are reused across the whole
/// p grid, so frontier differences are attributable to p alone.
pub fn sweep_pareto(config: &SweepConfig) -> Result<SweepResult> {
    config.validate()?;
    let data = config.source.materialize(config.data_seed)?;
    let (rest, test) = carve_holdout(&data, config.sizes.test, config.data_seed)?;
    let splits: Vec<(u64, DataSplit)> = config
        .seeds
        .iter()
        .map(|&seed| {
            let sizes = SplitSizes {
                test: 0,
                ..config.sizes
            };
            Ok((seed, split(&rest, sizes, seed)?))
        })
        .collect::<Result<_>>()?;

    let points: Vec<FrontierPoint> = config
        .p_grid
        .par_iter()
        .map(|&p| {
            let per_seed: Vec<SeedOutcome> = splits
                .iter()
                .map(|(seed, split)| run_cell(p, *seed, split, &test, config))
                .collect::<Result<_>>()?;
            let n = per_seed.len() as f64;
            Ok(FrontierPoint {
                p,
                mean_error: per_seed.iter().map(|o| o.error).sum::<f64>() / n,
                mean_violation: per_seed.iter().map(|o| o.violation).sum::<f64>() / n,
                per_seed,
            })
        })
        .collect::<Result<_>>()?;

    let frontier = pareto_filter(&points);
    Ok(SweepResult {
        config: config.clone(),
        points,
        frontier,
    })
}

fn dominates(a: &FrontierPoint, b: &FrontierPoint) -> bool {
    a.mean_error <= b.mean_error
        && a.mean_violation <= b.mean_violation
        && (a.mean_error < b.mean_error || a.mean_violation < b.mean_violation)
}

/// Keep the points not dominated in (error, violation), in stable order of
/// increasing error (violation breaking ties).
pub fn pareto_filter(points: &[FrontierPoint]) -> Vec<FrontierPoint> {
    let mut kept: Vec<FrontierPoint> = points
        .iter()
        .filter(|cand| !points.iter().any(|other| dominates(other, cand)))
        .cloned()
        .collect();
    kept.sort_by(|a, b| {
        a.mean_error
            .total_cmp(&b.mean_error)
            .then(a.mean_violation.total_cmp(&b.mean_violation))
            .then(a.p.total_cmp(&b.p))
    });
    kept
}

impl CsvTable for SweepResult {
    fn csv_header() -> &'static [&'static str] {
        &["p", "seed", "error", "violation", "on_frontier"]
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        let mut rows = Vec::new();
        for point in &self.points {
            let on_frontier = self.frontier.iter().any(|f| f.p == point.p);
            rows.push(vec![
                point.p.to_string(),
                "mean".into(),
                point.mean_error.to_string(),
                point.mean_violation.to_string(),
                on_frontier.to_string(),
            ]);
            for o in &point.per_seed {
                rows.push(vec![
                    point.p.to_string(),
                    o.seed.to_string(),
                    o.error.to_string(),
                    o.violation.to_string(),
                    String::new(),
                ]);
            }
        }
        rows
    }
}
