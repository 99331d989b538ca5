//! The adaptive sampling loop over a data pool.
//!
//! Each round evaluates the current model's per-group performance, flips a
//! coin with heads probability `p`, and draws the next training point either
//! uniformly from the whole pool (heads) or uniformly from the currently
//! disadvantaged group (tails). The model is then either refit on the grown
//! training set or updated by one SGD step on the new point.

use crate::data::{DataSplit, Dataset, LabeledPoint};
use crate::error::{Error, Result};
use crate::loss::MarginLossKind;
use crate::metrics::{self, MetricKind};
use crate::model::{
    fit_logistic_warm, fit_threshold, sgd_step, LinearModel, LogisticConfig, Model,
};
use crate::rng::substream;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Whether drawn pool points stay available for later rounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Replacement {
    With,
    Without,
}

/// Learning-rate schedule `lr(t) = scale / sqrt(t)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LrSchedule {
    pub scale: f64,
}

impl LrSchedule {
    pub fn inv_sqrt() -> Self {
        LrSchedule { scale: 1.0 }
    }

    /// The damped preset used when mixing in population draws (`p > 0`).
    pub fn damped_inv_sqrt() -> Self {
        LrSchedule { scale: 0.1 }
    }

    pub fn lr(&self, t: usize) -> f64 {
        self.scale / (t.max(1) as f64).sqrt()
    }
}

/// How the model absorbs each new point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum UpdateMode {
    /// Refit from scratch on the grown training set every round.
    BatchRetrain,
    /// One SGD step on the new point.
    SgdUpdate { schedule: LrSchedule },
}

/// Which classifier family the run trains.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum TrainerKind {
    Threshold { loss: MarginLossKind },
    Logistic { config: LogisticConfig },
}

impl TrainerKind {
    fn loss(&self) -> MarginLossKind {
        match self {
            TrainerKind::Threshold { loss } => *loss,
            TrainerKind::Logistic { .. } => MarginLossKind::Logistic,
        }
    }

    fn l2(&self) -> f64 {
        match self {
            TrainerKind::Threshold { .. } => 0.0,
            TrainerKind::Logistic { config } => config.l2,
        }
    }

    fn fit(&self, data: &Dataset, warm: Option<&Model>) -> Result<Model> {
        match self {
            TrainerKind::Threshold { loss } => Ok(Model::Threshold(fit_threshold(data, *loss)?)),
            TrainerKind::Logistic { config } => {
                let init = match warm {
                    Some(Model::Linear(m)) => m.clone(),
                    _ => LinearModel::zeros(data.dim()),
                };
                Ok(Model::Linear(fit_logistic_warm(data, &init, config)?))
            }
        }
    }
}

/// Where the per-group performance is estimated each round.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EvalSet {
    Validation,
    /// Evaluate on the growing training set itself (the regime of the
    /// finite-sample dichotomy analysis).
    Train,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplerConfig {
    pub p: f64,
    pub rounds: usize,
    pub update: UpdateMode,
    pub trainer: TrainerKind,
    pub replacement: Replacement,
    pub metric: MetricKind,
    pub eval_on: EvalSet,
    pub seed: u64,
}

impl SamplerConfig {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.p) {
            return Err(Error::Contract(format!("p {} outside [0,1]", self.p)));
        }
        if self.rounds == 0 {
            return Err(Error::Contract("rounds must be >= 1".into()));
        }
        Ok(())
    }
}

/// What to draw this round.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DrawTarget {
    Population,
    Group(usize),
}

/// Live view of a pool dataset supporting uniform draws with or without
/// replacement, per-group and population-wide.
pub struct Pool<'a> {
    data: &'a Dataset,
    replacement: Replacement,
    alive: Vec<bool>,
    // candidate index lists with lazily deleted entries
    all: Vec<usize>,
    by_group: Vec<Vec<usize>>,
    remaining_total: usize,
    remaining_by_group: Vec<usize>,
}

impl<'a> Pool<'a> {
    pub fn new(data: &'a Dataset, replacement: Replacement) -> Self {
        let mut by_group = vec![Vec::new(); data.group_count()];
        for (i, p) in data.points().iter().enumerate() {
            by_group[p.a].push(i);
        }
        let remaining_by_group = by_group.iter().map(Vec::len).collect();
        Pool {
            data,
            replacement,
            alive: vec![true; data.len()],
            all: (0..data.len()).collect(),
            by_group,
            remaining_total: data.len(),
            remaining_by_group,
        }
    }

    pub fn remaining(&self) -> usize {
        self.remaining_total
    }

    pub fn remaining_in_group(&self, a: usize) -> usize {
        self.remaining_by_group.get(a).copied().unwrap_or(0)
    }

    pub fn is_exhausted(&self) -> bool {
        self.remaining_total == 0
    }

    fn draw_from_list(list: &mut Vec<usize>, alive: &[bool], rng: &mut ChaCha8Rng) -> usize {
        loop {
            let slot = rng.random_range(0..list.len());
            let idx = list[slot];
            if alive[idx] {
                return idx;
            }
            list.swap_remove(slot);
        }
    }

    fn take(&mut self, idx: usize) {
        if self.replacement == Replacement::Without {
            self.alive[idx] = false;
            self.remaining_total -= 1;
            self.remaining_by_group[self.data.point(idx).a] -= 1;
        }
    }

    /// Draw uniformly from the eligible entries for `target`. Fails if that
    /// slice of the pool is exhausted.
    pub fn draw(&mut self, target: DrawTarget, rng: &mut ChaCha8Rng) -> Result<usize> {
        let idx = match target {
            DrawTarget::Population => {
                if self.remaining_total == 0 {
                    return Err(Error::Contract("pool exhausted".into()));
                }
                Self::draw_from_list(&mut self.all, &self.alive, rng)
            }
            DrawTarget::Group(a) => {
                if self.remaining_in_group(a) == 0 {
                    return Err(Error::Contract(format!("group {a} exhausted in pool")));
                }
                Self::draw_from_list(&mut self.by_group[a], &self.alive, rng)
            }
        };
        self.take(idx);
        Ok(idx)
    }

    /// Take a specific pool entry (e.g. the next one in a fixed ordering).
    pub fn claim(&mut self, idx: usize) -> Result<()> {
        if idx >= self.alive.len() {
            return Err(Error::Contract(format!("pool index {idx} out of range")));
        }
        if self.replacement == Replacement::Without && !self.alive[idx] {
            return Err(Error::Contract(format!("pool index {idx} already drawn")));
        }
        self.take(idx);
        Ok(())
    }

    /// Draw from the first group in `ranking` that still has points; used to
    /// fall back to the next-most-disadvantaged group once the preferred one
    /// runs dry. Returns the drawn index and the group actually used.
    pub fn draw_with_fallback(
        &mut self,
        ranking: &[usize],
        rng: &mut ChaCha8Rng,
    ) -> Result<(usize, usize)> {
        for &a in ranking {
            if self.remaining_in_group(a) > 0 {
                let idx = self.draw(DrawTarget::Group(a), rng)?;
                return Ok((idx, a));
            }
        }
        Err(Error::Contract("pool exhausted".into()))
    }
}

/// Groups ordered by decreasing metric value (ties toward the smaller id),
/// restricted to evaluable groups.
pub fn group_ranking(values: &[Option<f64>]) -> Vec<usize> {
    let mut ranked: Vec<(usize, f64)> = values
        .iter()
        .enumerate()
        .filter_map(|(a, v)| v.map(|v| (a, v)))
        .collect();
    ranked.sort_by(|x, y| y.1.total_cmp(&x.1).then(x.0.cmp(&y.0)));
    ranked.into_iter().map(|(a, _)| a).collect()
}

/// The group with the largest empirical metric value on `eval`, ties broken
/// toward the smaller group id. Errors if no group is evaluable.
pub fn disadvantaged_group(model: &Model, eval: &Dataset, metric: MetricKind) -> Result<usize> {
    let values = metrics::group_values(metric, model, eval)?;
    group_ranking(&values)
        .first()
        .copied()
        .ok_or_else(|| Error::Contract("no group evaluable on the evaluation set".into()))
}

/// One round of an adaptive run, as recorded in the trace.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoundRecord {
    pub t: usize,
    pub disadvantaged: usize,
    /// True when the coin chose the whole-population draw.
    pub coin_population: bool,
    /// Index of the drawn point in the pool dataset.
    pub sampled_index: usize,
    pub sampled_group: usize,
    /// Per-group metric values on the evaluation set; unevaluable groups are
    /// null.
    pub group_values: Vec<Option<f64>>,
    pub overall_eval_error: f64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

/// Full observable history of one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunTrace {
    pub config: SamplerConfig,
    pub rounds: Vec<RoundRecord>,
    pub final_model: Model,
    /// Reason the run stopped before `config.rounds`, if it did.
    pub early_stop: Option<String>,
}

impl RunTrace {
    /// Trace rounds as JSON lines, one record per round.
    pub fn to_json_lines(&self) -> Result<String> {
        let mut out = String::new();
        for r in &self.rounds {
            out.push_str(&serde_json::to_string(r).map_err(|e| Error::Contract(e.to_string()))?);
            out.push('\n');
        }
        Ok(out)
    }

    /// Per-group counts of the final training set (initial plus sampled).
    pub fn final_group_counts(&self, split: &DataSplit) -> Vec<usize> {
        let groups = split
            .train
            .group_count()
            .max(split.pool.group_count());
        let mut counts = vec![0usize; groups];
        for p in split.train.points() {
            counts[p.a] += 1;
        }
        for r in &self.rounds {
            counts[split.pool.point(r.sampled_index).a] += 1;
        }
        counts
    }

    /// The final training set reassembled from the split and the trace.
    pub fn final_train_set(&self, split: &DataSplit) -> Result<Dataset> {
        let mut points: Vec<LabeledPoint> = split.train.points().to_vec();
        points.extend(
            self.rounds
                .iter()
                .map(|r| split.pool.point(r.sampled_index).clone()),
        );
        let groups = split.train.group_count().max(split.pool.group_count());
        Dataset::with_group_count(points, groups)
    }
}

/// Run the adaptive loop for `config.rounds` rounds over `split`. The initial
/// model is fit on the training part unless one is supplied. Deterministic
/// given config, split, and seed.
pub fn run(config: &SamplerConfig, split: &DataSplit, initial: Option<Model>) -> Result<RunTrace> {
    config.validate()?;
    if split.train.is_empty() && initial.is_none() {
        return Err(Error::EmptyData("initial training set is empty".into()));
    }
    if config.eval_on == EvalSet::Validation && split.validation.is_empty() {
        return Err(Error::EmptyData("validation set is empty".into()));
    }

    let mut train = split.train.clone();
    let mut model = match initial {
        Some(m) => m,
        None => config.trainer.fit(&train, None)?,
    };
    let mut pool = Pool::new(&split.pool, config.replacement);
    let mut coin_rng = substream(config.seed, "coin");
    let mut population_rng = substream(config.seed, "point-draw");
    let mut group_rng = substream(config.seed, "group-draw");

    let mut rounds = Vec::with_capacity(config.rounds);
    let mut early_stop = None;

    for t in 1..=config.rounds {
        if pool.is_exhausted() {
            early_stop = Some(format!("pool exhausted after {} rounds", t - 1));
            break;
        }
        let eval: &Dataset = match config.eval_on {
            EvalSet::Validation => &split.validation,
            EvalSet::Train => &train,
        };
        let values = metrics::group_values(config.metric, &model, eval)?;
        let ranking = group_ranking(&values);
        let mut warnings: Vec<String> = values
            .iter()
            .enumerate()
            .filter(|(_, v)| v.is_none())
            .map(|(a, _)| format!("group {a} not evaluable this round; excluded"))
            .collect();
        let Some(&disadvantaged) = ranking.first() else {
            return Err(Error::Contract(
                "no group evaluable on the evaluation set".into(),
            ));
        };

        let coin_population = coin_rng.random::<f64>() < config.p;
        let (sampled_index, sampled_from) = if coin_population {
            (pool.draw(DrawTarget::Population, &mut population_rng)?, None)
        } else {
            let (idx, used) = pool.draw_with_fallback(&ranking, &mut group_rng)?;
            if used != disadvantaged {
                warnings.push(format!(
                    "group {disadvantaged} exhausted; drew from group {used} instead"
                ));
            }
            (idx, Some(used))
        };
        let point = split.pool.point(sampled_index).clone();
        let sampled_group = point.a;
        debug_assert!(sampled_from.is_none_or(|g| g == sampled_group));

        train.push(point.clone())?;
        model = match config.update {
            UpdateMode::BatchRetrain => config.trainer.fit(&train, Some(&model))?,
            UpdateMode::SgdUpdate { schedule } => sgd_step(
                &model,
                &point,
                schedule.lr(t),
                config.trainer.loss(),
                config.trainer.l2(),
            )?,
        };

        let eval: &Dataset = match config.eval_on {
            EvalSet::Validation => &split.validation,
            EvalSet::Train => &train,
        };
        let overall_eval_error = metrics::overall_error(&model, eval).unwrap_or(f64::NAN);
        rounds.push(RoundRecord {
            t,
            disadvantaged,
            coin_population,
            sampled_index,
            sampled_group,
            group_values: values,
            overall_eval_error,
            warnings,
        });
    }

    Ok(RunTrace {
        config: config.clone(),
        rounds,
        final_model: model,
        early_stop,
    })
}

/// Index sequence of a plain uniform-from-pool baseline consuming the same
/// point-draw stream as [`run`]. With `p = 1` the adaptive loop draws exactly
/// this sequence.
pub fn uniform_baseline_draws(
    pool_data: &Dataset,
    rounds: usize,
    replacement: Replacement,
    seed: u64,
) -> Vec<usize> {
    let mut pool = Pool::new(pool_data, replacement);
    let mut rng = substream(seed, "point-draw");
    let mut out = Vec::with_capacity(rounds);
    for _ in 0..rounds {
        match pool.draw(DrawTarget::Population, &mut rng) {
            Ok(idx) => out.push(idx),
            Err(_) => break,
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::{Label, SplitSizes};

    fn labeled(x: f64, a: usize) -> LabeledPoint {
        LabeledPoint::new(vec![x], Label::from_sign(x), a)
    }

    fn tiny_split() -> DataSplit {
        let train = Dataset::with_group_count(
            vec![labeled(-1.0, 0), labeled(1.0, 0), labeled(-2.0, 1), labeled(2.0, 1)],
            2,
        )
        .unwrap();
        let pool = Dataset::with_group_count(
            (0..40)
                .map(|i| labeled(i as f64 / 10.0 - 2.0, i % 2))
                .collect(),
            2,
        )
        .unwrap();
        let validation = Dataset::with_group_count(
            (0..40)
                .map(|i| labeled(i as f64 / 7.0 - 3.0, i % 2))
                .collect(),
            2,
        )
        .unwrap();
        DataSplit {
            train,
            pool,
            validation: validation.clone(),
            test: validation,
        }
    }

    fn config(p: f64, replacement: Replacement) -> SamplerConfig {
        SamplerConfig {
            p,
            rounds: 25,
            update: UpdateMode::BatchRetrain,
            trainer: TrainerKind::Threshold {
                loss: MarginLossKind::Hinge,
            },
            replacement,
            metric: MetricKind::ZeroOneError,
            eval_on: EvalSet::Validation,
            seed: 11,
        }
    }

    #[test]
    fn disadvantaged_group_is_argmax_with_small_id_ties() {
        let model = Model::Threshold(crate::model::ThresholdModel { c: 0.0 });
        // group 0 error 0.5 (one of two wrong), group 1 error 0.0
        let eval = Dataset::with_group_count(
            vec![
                LabeledPoint::new(vec![1.0], Label::Pos, 0),
                LabeledPoint::new(vec![1.0], Label::Neg, 0),
                LabeledPoint::new(vec![1.0], Label::Pos, 1),
            ],
            2,
        )
        .unwrap();
        assert_eq!(
            disadvantaged_group(&model, &eval, MetricKind::ZeroOneError).unwrap(),
            0
        );
        // exact tie -> smaller id
        let tie = Dataset::with_group_count(
            vec![
                LabeledPoint::new(vec![1.0], Label::Pos, 0),
                LabeledPoint::new(vec![1.0], Label::Pos, 1),
            ],
            2,
        )
        .unwrap();
        assert_eq!(
            disadvantaged_group(&model, &tie, MetricKind::ZeroOneError).unwrap(),
            0
        );
    }

    #[test]
    fn equal_opportunity_metric_selects_by_false_negative_rate() {
        let model = Model::Threshold(crate::model::ThresholdModel { c: 0.0 });
        // group 0: overall error 0.5 but no positives missed;
        // group 1: overall error lower, yet half its positives are missed
        let eval = Dataset::with_group_count(
            vec![
                LabeledPoint::new(vec![1.0], Label::Neg, 0), // false positive
                LabeledPoint::new(vec![1.0], Label::Neg, 0), // false positive
                LabeledPoint::new(vec![1.0], Label::Pos, 0),
                LabeledPoint::new(vec![1.0], Label::Pos, 0),
                LabeledPoint::new(vec![-1.0], Label::Pos, 1), // missed positive
                LabeledPoint::new(vec![1.0], Label::Pos, 1),
                LabeledPoint::new(vec![-1.0], Label::Neg, 1),
                LabeledPoint::new(vec![-1.0], Label::Neg, 1),
            ],
            2,
        )
        .unwrap();
        assert_eq!(
            disadvantaged_group(&model, &eval, MetricKind::ZeroOneError).unwrap(),
            0
        );
        assert_eq!(
            disadvantaged_group(&model, &eval, MetricKind::EqualOpportunityGap).unwrap(),
            1
        );
    }

    #[test]
    fn pool_draw_without_replacement_empties() {
        let data = Dataset::with_group_count(vec![labeled(0.5, 0)], 1).unwrap();
        let mut pool = Pool::new(&data, Replacement::Without);
        let mut rng = substream(0, "t");
        let idx = pool.draw(DrawTarget::Group(0), &mut rng).unwrap();
        assert_eq!(idx, 0);
        assert!(pool.is_exhausted());
        assert!(pool.draw(DrawTarget::Population, &mut rng).is_err());
    }

    #[test]
    fn population_draws_follow_group_fractions() {
        let mut points = Vec::new();
        for i in 0..1000 {
            points.push(labeled(i as f64, usize::from(i >= 850)));
        }
        let data = Dataset::with_group_count(points, 2).unwrap();
        let mut pool = Pool::new(&data, Replacement::With);
        let mut rng = substream(4, "t");
        let draws = 10_000;
        let mut group0 = 0;
        for _ in 0..draws {
            let idx = pool.draw(DrawTarget::Population, &mut rng).unwrap();
            if data.point(idx).a == 0 {
                group0 += 1;
            }
        }
        let frac = group0 as f64 / draws as f64;
        assert!((frac - 0.85).abs() < 0.02, "frac = {frac}");
    }

    #[test]
    fn fallback_moves_to_next_ranked_group() {
        let data = Dataset::with_group_count(vec![labeled(1.0, 1), labeled(2.0, 1)], 2).unwrap();
        let mut pool = Pool::new(&data, Replacement::Without);
        let mut rng = substream(9, "t");
        // group 0 ranked first but empty in the pool
        let (idx, used) = pool.draw_with_fallback(&[0, 1], &mut rng).unwrap();
        assert_eq!(used, 1);
        assert!(idx < 2);
    }

    #[test]
    fn p_one_matches_uniform_baseline_draws() {
        let split = tiny_split();
        let cfg = config(1.0, Replacement::Without);
        let trace = run(&cfg, &split, None).unwrap();
        let baseline =
            uniform_baseline_draws(&split.pool, cfg.rounds, Replacement::Without, cfg.seed);
        let sampled: Vec<usize> = trace.rounds.iter().map(|r| r.sampled_index).collect();
        assert_eq!(sampled, baseline);
    }

    #[test]
    fn traces_are_seed_deterministic() {
        let split = tiny_split();
        let cfg = config(0.4, Replacement::Without);
        let a = run(&cfg, &split, None).unwrap();
        let b = run(&cfg, &split, None).unwrap();
        assert_eq!(a, b);
        let mut cfg2 = cfg.clone();
        cfg2.seed = 12;
        let c = run(&cfg2, &split, None).unwrap();
        assert_ne!(
            a.rounds
                .iter()
                .map(|r| r.sampled_index)
                .collect::<Vec<_>>(),
            c.rounds
                .iter()
                .map(|r| r.sampled_index)
                .collect::<Vec<_>>()
        );
    }

    #[test]
    fn without_replacement_indices_are_unique_and_counts_bounded() {
        let split = tiny_split();
        let mut cfg = config(0.3, Replacement::Without);
        cfg.rounds = 40;
        let trace = run(&cfg, &split, None).unwrap();
        let mut seen = std::collections::HashSet::new();
        for r in &trace.rounds {
            assert!(seen.insert(r.sampled_index), "index drawn twice");
        }
        let counts = trace.final_group_counts(&split);
        for (a, &count) in counts.iter().enumerate() {
            assert!(count <= split.train.group_size(a) + split.pool.group_size(a));
        }
    }

    #[test]
    fn run_stops_early_when_pool_runs_dry() {
        let split = tiny_split();
        let mut cfg = config(0.0, Replacement::Without);
        cfg.rounds = 100; // pool has only 40 points
        let trace = run(&cfg, &split, None).unwrap();
        assert_eq!(trace.rounds.len(), 40);
        assert!(trace.early_stop.is_some());
    }

    #[test]
    fn training_set_grows_by_one_per_round() {
        let split = tiny_split();
        let cfg = config(0.5, Replacement::Without);
        let trace = run(&cfg, &split, None).unwrap();
        let final_train = trace.final_train_set(&split).unwrap();
        assert_eq!(final_train.len(), split.train.len() + trace.rounds.len());
    }

    #[test]
    fn p_zero_always_samples_a_top_ranked_group_with_points() {
        let split = tiny_split();
        let cfg = config(0.0, Replacement::Without);
        let trace = run(&cfg, &split, None).unwrap();
        for r in &trace.rounds {
            assert!(!r.coin_population);
            // the drawn group is the disadvantaged one unless it was exhausted
            if r.warnings.is_empty() {
                assert_eq!(r.sampled_group, r.disadvantaged);
            }
        }
    }

    #[test]
    fn trace_serializes_one_json_record_per_round() {
        let split = tiny_split();
        let cfg = config(0.5, Replacement::Without);
        let trace = run(&cfg, &split, None).unwrap();
        let lines = trace.to_json_lines().unwrap();
        let rows: Vec<&str> = lines.lines().collect();
        assert_eq!(rows.len(), trace.rounds.len());
        let first: RoundRecord = serde_json::from_str(rows[0]).unwrap();
        assert_eq!(first, trace.rounds[0]);
        // the final model round-trips through its JSON document
        let model_json = serde_json::to_string(&trace.final_model).unwrap();
        assert_eq!(
            serde_json::from_str::<Model>(&model_json).unwrap(),
            trace.final_model
        );
    }

    #[test]
    fn sgd_update_mode_touches_only_the_threshold() {
        let split = tiny_split();
        let mut cfg = config(0.5, Replacement::Without);
        cfg.update = UpdateMode::SgdUpdate {
            schedule: LrSchedule::inv_sqrt(),
        };
        let trace = run(&cfg, &split, None).unwrap();
        assert!(trace.final_model.as_threshold().is_some());
    }

    #[test]
    fn run_works_on_a_real_split() {
        // exercise run() on a split produced by the real splitter
        let spec =
            crate::data::UniformMixtureSpec::new(0.0, 10.0, 4.0, 1.0, 14.0, 7.0, 0.6).unwrap();
        let data = crate::data::synth_uniform_mixture(&spec, 400, 5).unwrap();
        let split = crate::data::split(
            &data,
            SplitSizes {
                train: 40,
                pool: 200,
                validation: 100,
                test: 60,
            },
            5,
        )
        .unwrap();
        let cfg = config(0.2, Replacement::Without);
        let trace = run(&cfg, &split, None).unwrap();
        assert_eq!(trace.rounds.len(), cfg.rounds);
    }
}
