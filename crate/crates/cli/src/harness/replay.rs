//! Sequential replay: consume a timestamped pool point by point under
//! interchangeable ordering strategies and track per-group test error curves.
//!
//! Strategies implement [`OrderingStrategy`] and are registered by name, so a
//! run can compare any subset selected from the command line. All strategies
//! sample without replacement and, within one seed, consume identical splits
//! of the same dataset; once the pool is gone they have seen the same points.

use super::source::DataSource;
use crate::emit::CsvTable;
use fairsample_core::data::{carve_holdout, split, DataSplit, Dataset, SplitSizes};
use fairsample_core::error::Error;
use fairsample_core::metrics::{self, MetricKind};
use fairsample_core::model::{fit_logistic_warm, LinearModel, LogisticConfig, Model};
use fairsample_core::rng::substream;
use fairsample_core::sampler::{group_ranking, DrawTarget, Pool, Replacement};
use fairsample_core::Result;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Everything a strategy may look at when choosing the next point.
pub struct ReplayContext<'a> {
    pub pool_data: &'a Dataset,
    pub model: &'a Model,
    pub validation: &'a Dataset,
    pub metric: MetricKind,
}

/// One way of ordering the pool. Implementations must be deterministic given
/// the context and the rng handed to them.
pub trait OrderingStrategy: Send {
    /// Registry name (also used in result labels).
    fn name(&self) -> &'static str;
    /// Pick and claim the next pool index, or `None` when the pool is empty.
    fn next(
        &mut self,
        ctx: &ReplayContext<'_>,
        pool: &mut Pool<'_>,
        rng: &mut ChaCha8Rng,
    ) -> Result<Option<usize>>;
}

/// Replays points in increasing timestamp order (the historical ordering).
struct TimestampOrder {
    queue: Option<Vec<usize>>, // indices sorted by descending timestamp
}

impl OrderingStrategy for TimestampOrder {
    fn name(&self) -> &'static str {
        "timestamp"
    }

    fn next(
        &mut self,
        ctx: &ReplayContext<'_>,
        pool: &mut Pool<'_>,
        _rng: &mut ChaCha8Rng,
    ) -> Result<Option<usize>> {
        let queue = match &mut self.queue {
            Some(q) => q,
            None => {
                let ts = ctx.pool_data.timestamps().ok_or_else(|| {
                    Error::Contract("timestamp strategy needs per-point timestamps".into())
                })?;
                let mut order: Vec<usize> = (0..ctx.pool_data.len()).collect();
                order.sort_by(|&i, &j| ts[j].cmp(&ts[i]).then(j.cmp(&i)));
                self.queue.insert(order)
            }
        };
        match queue.pop() {
            Some(idx) => {
                pool.claim(idx)?;
                Ok(Some(idx))
            }
            None => Ok(None),
        }
    }
}

/// Draws uniformly from the remaining pool.
struct RandomOrder;

impl OrderingStrategy for RandomOrder {
    fn name(&self) -> &'static str {
        "random"
    }

    fn next(
        &mut self,
        _ctx: &ReplayContext<'_>,
        pool: &mut Pool<'_>,
        rng: &mut ChaCha8Rng,
    ) -> Result<Option<usize>> {
        if pool.is_exhausted() {
            return Ok(None);
        }
        pool.draw(DrawTarget::Population, rng).map(Some)
    }
}

/// Draws uniformly from the group with the highest metric value on the
/// validation set among groups with points remaining.
struct AdaptiveOrder;

impl OrderingStrategy for AdaptiveOrder {
    fn name(&self) -> &'static str {
        "adaptive"
    }

    fn next(
        &mut self,
        ctx: &ReplayContext<'_>,
        pool: &mut Pool<'_>,
        rng: &mut ChaCha8Rng,
    ) -> Result<Option<usize>> {
        if pool.is_exhausted() {
            return Ok(None);
        }
        let values = metrics::group_values(ctx.metric, ctx.model, ctx.validation)?;
        let mut ranking = group_ranking(&values);
        // groups invisible on the validation set still hold pool points;
        // append them so the run can always proceed
        for a in 0..ctx.pool_data.group_count() {
            if !ranking.contains(&a) {
                ranking.push(a);
            }
        }
        let (idx, _) = pool.draw_with_fallback(&ranking, rng)?;
        Ok(Some(idx))
    }
}

/// Names accepted by [`make_strategy`], in presentation order.
pub const STRATEGY_NAMES: [&str; 3] = ["timestamp", "random", "adaptive"];

/// Look up an ordering strategy by its registry name.
pub fn make_strategy(name: &str) -> Result<Box<dyn OrderingStrategy>> {
    match name {
        "timestamp" => Ok(Box::new(TimestampOrder { queue: None })),
        "random" => Ok(Box::new(RandomOrder)),
        "adaptive" => Ok(Box::new(AdaptiveOrder)),
        other => Err(Error::Contract(format!(
            "unknown strategy {other:?}; available: {}",
            STRATEGY_NAMES.join(", ")
        ))),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReplayConfig {
    pub source: DataSource,
    pub data_seed: u64,
    pub strategies: Vec<String>,
    pub seeds: Vec<u64>,
    pub train_size: usize,
    pub validation_size: usize,
    pub test_size: usize,
    /// Refit cadence in rounds; 0 selects every round for datasets of at
    /// most 5000 points and every 10 rounds above that.
    pub retrain_every: usize,
    pub logistic: LogisticConfig,
    pub metric: MetricKind,
    /// Optional cap on replayed rounds (default: the whole pool).
    pub max_rounds: Option<usize>,
}

impl ReplayConfig {
    fn cadence(&self, total: usize) -> usize {
        if self.retrain_every > 0 {
            self.retrain_every
        } else if total <= 5_000 {
            1
        } else {
            10
        }
    }
}

/// Error curves of one strategy in one seeded run; entry `t` describes the
/// model after `t` replayed points (entry 0 is the initial model).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrategyCurves {
    pub strategy: String,
    /// `group_error[t][a]`; groups absent from the test set are null.
    pub group_error: Vec<Vec<Option<f64>>>,
    pub overall_error: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeedReplay {
    pub seed: u64,
    pub strategies: Vec<StrategyCurves>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReplayResult {
    pub config: ReplayConfig,
    pub rounds: usize,
    pub runs: Vec<SeedReplay>,
}

fn replay_one(
    strategy_name: &str,
    split: &DataSplit,
    config: &ReplayConfig,
    seed: u64,
    rounds: usize,
    cadence: usize,
) -> Result<StrategyCurves> {
    let mut strategy = make_strategy(strategy_name)?;
    let mut rng = substream(seed, &format!("replay-{strategy_name}"));
    let mut train = split.train.clone();
    let mut model = Model::Linear(fit_logistic_warm(
        &train,
        &LinearModel::zeros(train.dim()),
        &config.logistic,
    )?);
    let mut pool = Pool::new(&split.pool, Replacement::Without);

    let mut group_error = Vec::with_capacity(rounds + 1);
    let mut overall_error = Vec::with_capacity(rounds + 1);
    let mut record = |model: &Model| -> Result<()> {
        group_error.push(metrics::group_values(
            MetricKind::ZeroOneError,
            model,
            &split.test,
        )?);
        overall_error.push(metrics::overall_error(model, &split.test)?);
        Ok(())
    };
    record(&model)?;

    for t in 1..=rounds {
        let ctx = ReplayContext {
            pool_data: &split.pool,
            model: &model,
            validation: &split.validation,
            metric: config.metric,
        };
        let Some(idx) = strategy.next(&ctx, &mut pool, &mut rng)? else {
            break;
        };
        train.push(split.pool.point(idx).clone())?;
        if t % cadence == 0 || t == rounds {
            let Model::Linear(prev) = &model else {
                unreachable!("replay trains linear models only")
            };
            model = Model::Linear(fit_logistic_warm(&train, prev, &config.logistic)?);
        }
        record(&model)?;
    }
    Ok(StrategyCurves {
        strategy: strategy_name.to_string(),
        group_error,
        overall_error,
    })
}

/// Replay every (seed, strategy) cell. All strategies of one seed share the
/// same split; the test holdout is shared by all seeds.
pub fn run_replay(config: &ReplayConfig) -> Result<ReplayResult> {
    if config.strategies.is_empty() || config.seeds.is_empty() {
        return Err(Error::Contract("need at least one strategy and one seed".into()));
    }
    for name in &config.strategies {
        make_strategy(name)?;
    }
    let data = config.source.materialize(config.data_seed)?;
    if config.strategies.iter().any(|s| s == "timestamp") && data.timestamps().is_none() {
        return Err(Error::Contract(
            "timestamp strategy needs per-point timestamps".into(),
        ));
    }
    let (rest, test) = carve_holdout(&data, config.test_size, config.data_seed)?;
    let pool_size = rest
        .len()
        .checked_sub(config.train_size + config.validation_size)
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::Contract("no pool points left after train/validation".into()))?;
    let rounds = config.max_rounds.map_or(pool_size, |m| m.min(pool_size));
    let cadence = config.cadence(data.len());

    let runs: Vec<SeedReplay> = config
        .seeds
        .par_iter()
        .map(|&seed| {
            let sizes = SplitSizes {
                train: config.train_size,
                pool: pool_size,
                validation: config.validation_size,
                test: 0,
            };
            let parts = split(&rest, sizes, seed)?;
            let split = DataSplit {
                test: test.clone(),
                ..parts
            };
            let strategies = config
                .strategies
                .iter()
                .map(|name| replay_one(name, &split, config, seed, rounds, cadence))
                .collect::<Result<_>>()?;
            Ok(SeedReplay { seed, strategies })
        })
        .collect::<Result<_>>()?;

    Ok(ReplayResult {
        config: config.clone(),
        rounds,
        runs,
    })
}

impl ReplayResult {
    /// Mean over a round window of the max pairwise per-group test error gap,
    /// averaged per strategy run.
    pub fn window_gap(&self, curves: &StrategyCurves, lo: usize, hi: usize) -> f64 {
        let hi = hi.min(curves.group_error.len().saturating_sub(1));
        let mut sum = 0.0;
        let mut count = 0usize;
        for t in lo..=hi {
            let vals: Vec<f64> = curves.group_error[t].iter().flatten().copied().collect();
            if vals.len() >= 2 {
                let max = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                let min = vals.iter().cloned().fold(f64::INFINITY, f64::min);
                sum += max - min;
                count += 1;
            }
        }
        if count == 0 {
            f64::NAN
        } else {
            sum / count as f64
        }
    }

    /// Mean overall test error over a round window.
    pub fn window_overall(&self, curves: &StrategyCurves, lo: usize, hi: usize) -> f64 {
        let hi = hi.min(curves.overall_error.len().saturating_sub(1));
        let slice = &curves.overall_error[lo..=hi];
        slice.iter().sum::<f64>() / slice.len() as f64
    }
}

impl CsvTable for ReplayResult {
    fn csv_header() -> &'static [&'static str] {
        &["seed", "strategy", "t", "group", "error"]
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        let mut rows = Vec::new();
        for run in &self.runs {
            for curves in &run.strategies {
                for (t, (groups, overall)) in curves
                    .group_error
                    .iter()
                    .zip(&curves.overall_error)
                    .enumerate()
                {
                    rows.push(vec![
                        run.seed.to_string(),
                        curves.strategy.clone(),
                        t.to_string(),
                        "overall".into(),
                        overall.to_string(),
                    ]);
                    for (a, v) in groups.iter().enumerate() {
                        if let Some(v) = v {
                            rows.push(vec![
                                run.seed.to_string(),
                                curves.strategy.clone(),
                                t.to_string(),
                                a.to_string(),
                                v.to_string(),
                            ]);
                        }
                    }
                }
            }
        }
        rows
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use fairsample_core::data::WardSpec;

    fn tiny_config() -> ReplayConfig {
        ReplayConfig {
            source: DataSource::Wards {
                spec: WardSpec {
                    ward_sizes: vec![60, 60, 60],
                    feature_means: vec![-0.8, 0.0, 0.8],
                    label_noise: vec![0.05, 0.1, 0.05],
                    feature_std: 1.0,
                    boundary_offset: 0.3,
                    test_size: 60,
                },
            },
            data_seed: 3,
            strategies: STRATEGY_NAMES.iter().map(|s| s.to_string()).collect(),
            seeds: vec![0, 1],
            train_size: 12,
            validation_size: 24,
            test_size: 60,
            retrain_every: 5,
            logistic: LogisticConfig {
                max_iter: 200,
                tol: 1e-4,
                l2: 1e-3,
            },
            metric: MetricKind::ZeroOneError,
            max_rounds: Some(30),
        }
    }

    #[test]
    fn registry_knows_every_name_and_rejects_others() {
        for name in STRATEGY_NAMES {
            assert_eq!(make_strategy(name).unwrap().name(), name);
        }
        assert!(make_strategy("greedy").is_err());
    }

    #[test]
    fn curves_have_equal_lengths_across_strategies() {
        let result = run_replay(&tiny_config()).unwrap();
        assert_eq!(result.runs.len(), 2);
        for run in &result.runs {
            assert_eq!(run.strategies.len(), 3);
            for curves in &run.strategies {
                assert_eq!(curves.group_error.len(), result.rounds + 1);
                assert_eq!(curves.overall_error.len(), result.rounds + 1);
            }
        }
    }

    #[test]
    fn timestamp_strategy_consumes_pool_in_timestamp_order() {
        let config = tiny_config();
        let data = config.source.materialize(config.data_seed).unwrap();
        let (rest, _) = carve_holdout(&data, config.test_size, config.data_seed).unwrap();
        let sizes = SplitSizes {
            train: config.train_size,
            pool: rest.len() - config.train_size - config.validation_size,
            validation: config.validation_size,
            test: 0,
        };
        let parts = split(&rest, sizes, 0).unwrap();
        let ts = parts.pool.timestamps().unwrap().to_vec();
        let mut strategy = make_strategy("timestamp").unwrap();
        let mut pool = Pool::new(&parts.pool, Replacement::Without);
        let mut rng = substream(0, "t");
        let model = Model::Linear(LinearModel::zeros(1));
        let ctx = ReplayContext {
            pool_data: &parts.pool,
            model: &model,
            validation: &parts.validation,
            metric: MetricKind::ZeroOneError,
        };
        let mut last = 0u64;
        let mut first = true;
        while let Some(idx) = strategy.next(&ctx, &mut pool, &mut rng).unwrap() {
            assert!(first || ts[idx] >= last, "out of order at ts {}", ts[idx]);
            last = ts[idx];
            first = false;
        }
        assert!(pool.is_exhausted());
    }

    #[test]
    fn full_replay_ends_with_identical_training_sets() {
        let mut config = tiny_config();
        config.max_rounds = None; // consume the whole pool
        let result = run_replay(&config).unwrap();
        for run in &result.runs {
            let finals: Vec<f64> = run
                .strategies
                .iter()
                .map(|c| *c.overall_error.last().unwrap())
                .collect();
            // same final training set (the whole pool) => same final model
            assert!(finals.iter().all(|&v| (v - finals[0]).abs() < 1e-12));
        }
    }

    #[test]
    fn replay_is_deterministic() {
        let config = tiny_config();
        let a = run_replay(&config).unwrap();
        let b = run_replay(&config).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn missing_timestamps_fail_the_timestamp_strategy() {
        let mut config = tiny_config();
        config.source = DataSource::UniformMixture {
            spec: fairsample_core::data::UniformMixtureSpec::new(
                0.0, 10.0, 4.0, 1.0, 14.0, 7.0, 0.5,
            )
            .unwrap(),
            n: 300,
        };
        assert!(run_replay(&config).is_err());
        config.strategies = vec!["random".into(), "adaptive".into()];
        assert!(run_replay(&config).is_ok());
    }
}
