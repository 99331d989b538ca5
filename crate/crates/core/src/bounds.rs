//! Finite-sample deviation widths and the two-arm dichotomy check.
//!
//! With a hypothesis class of VC dimension `vc`, confidence `delta`, and `T`
//! rounds, the per-group empirical losses stay within
//! `sqrt(2 vc ln(2T/delta) / n_a)` of their population values uniformly over
//! the class. Consequently the final model either has nearly equal true
//! losses on the two groups, or the next adaptive round provably samples from
//! the group with higher true loss. The checker classifies instrumented runs
//! into those two arms against an exact true-loss oracle.

use crate::analytic::uniform;
use crate::data::{DataSplit, Dataset, UniformMixtureSpec};
use crate::error::{Error, Result};
use crate::metrics::{self, MetricKind};
use crate::model::Model;
use crate::sampler::{disadvantaged_group, EvalSet, RunTrace};
use serde::Serialize;

/// Inputs of the deviation-width formula.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundParams {
    /// VC dimension of the hypothesis class (1 for thresholds, d+1 for
    /// linear classifiers); an input, never computed.
    pub vc: usize,
    pub delta: f64,
    /// Total number of rounds the union bound covers.
    pub rounds: usize,
    /// Per-group sample counts at the round under consideration.
    pub n0t: usize,
    pub n1t: usize,
}

impl BoundParams {
    pub fn validate(&self) -> Result<()> {
        if self.vc == 0 {
            return Err(Error::Contract("vc must be >= 1".into()));
        }
        if !(0.0 < self.delta && self.delta < 1.0) {
            return Err(Error::Contract(format!(
                "delta must lie in (0,1), got {}",
                self.delta
            )));
        }
        if self.rounds == 0 || self.n0t == 0 || self.n1t == 0 {
            return Err(Error::Contract("rounds and counts must be >= 1".into()));
        }
        Ok(())
    }

    fn log_term(&self) -> f64 {
        (2.0 * self.rounds as f64 / self.delta).ln()
    }

    fn deviation(&self, n: usize) -> f64 {
        (2.0 * self.vc as f64 * self.log_term() / n as f64).sqrt()
    }
}

/// Sum of the two per-group deviation widths:
/// `sqrt(2 vc ln(2T/d)/n0) + sqrt(2 vc ln(2T/d)/n1)`.
pub fn epsilon(params: &BoundParams) -> f64 {
    params.deviation(params.n0t) + params.deviation(params.n1t)
}

/// Upper bound on [`epsilon`] in terms of the smaller count:
/// `2 max_a sqrt(2 vc ln(2T/d)/n_a)`.
pub fn epsilon_upper(params: &BoundParams) -> f64 {
    2.0 * params.deviation(params.n0t.min(params.n1t))
}

/// The looser-reading variant without the factor 2 inside the radical,
/// reported alongside for comparison.
pub fn epsilon_upper_alt(params: &BoundParams) -> f64 {
    let n = params.n0t.min(params.n1t) as f64;
    2.0 * (params.vc as f64 * params.log_term() / n).sqrt()
}

/// A known generating distribution against which true losses are exact.
#[derive(Debug, Clone)]
pub enum GroundTruth {
    /// Closed-form CDF evaluation for the uniform two-group model.
    Uniform(UniformMixtureSpec),
    /// Exhaustive enumeration over a finite two-group distribution (uniform
    /// over its points). Sampling a pool with replacement is i.i.d. sampling
    /// from exactly this distribution.
    Finite(Dataset),
}

/// Exact per-group population 0-1 losses of `model` under the ground truth.
pub fn brute_force_true_loss(truth: &GroundTruth, model: &Model) -> Result<(f64, f64)> {
    match truth {
        GroundTruth::Uniform(spec) => {
            let m = model.as_threshold().ok_or_else(|| {
                Error::Contract("uniform ground truth scores threshold models only".into())
            })?;
            Ok((
                uniform::group_zero_one_loss(spec, 0, m.c),
                uniform::group_zero_one_loss(spec, 1, m.c),
            ))
        }
        GroundTruth::Finite(data) => {
            if data.group_count() != 2 {
                return Err(Error::Contract(format!(
                    "finite ground truth must have 2 groups, got {}",
                    data.group_count()
                )));
            }
            let loss0 = metrics::group_value(MetricKind::ZeroOneError, model, data, 0)?;
            let loss1 = metrics::group_value(MetricKind::ZeroOneError, model, data, 1)?;
            Ok((loss0, loss1))
        }
    }
}

/// Which arm of the dichotomy held.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DichotomyArm {
    /// True losses within the deviation bound.
    WithinBound,
    /// Gap exceeds the bound and the next round samples the higher-loss group.
    SamplesHigherTrueLoss,
    /// Neither held (a low-probability event under the confidence level).
    Violated,
}

/// Every intermediate quantity of one dichotomy classification, for audit.
#[derive(Debug, Clone, Serialize)]
pub struct DichotomyReport {
    pub arm: DichotomyArm,
    pub params: BoundParams,
    pub true_loss0: f64,
    pub true_loss1: f64,
    pub gap: f64,
    /// `2 max_a sqrt(2 vc ln(2T/d)/n_a)` at the final round's counts.
    pub bound: f64,
    /// Same without the 2 inside the radical, for comparison.
    pub bound_alt: f64,
    pub epsilon: f64,
    /// Group an extra round would sample from (empirical argmax on train).
    pub next_round_group: usize,
    pub higher_true_loss_group: usize,
}

/// Classify a finished train-set-evaluated run into the dichotomy arms. The
/// hypothetical extra round is realized by re-running the disadvantaged-group
/// detection on the final training set.
pub fn dichotomy_check(
    trace: &RunTrace,
    split: &DataSplit,
    truth: &GroundTruth,
    vc: usize,
    delta: f64,
) -> Result<DichotomyReport> {
    if trace.config.eval_on != EvalSet::Train {
        return Err(Error::Contract(
            "dichotomy check requires a run evaluated on the training set".into(),
        ));
    }
    let counts = trace.final_group_counts(split);
    if counts.len() != 2 {
        return Err(Error::Contract(format!(
            "dichotomy check covers exactly 2 groups, got {}",
            counts.len()
        )));
    }
    let params = BoundParams {
        vc,
        delta,
        rounds: trace.config.rounds,
        n0t: counts[0],
        n1t: counts[1],
    };
    params.validate()?;

    let (true_loss0, true_loss1) = brute_force_true_loss(truth, &trace.final_model)?;
    let gap = (true_loss0 - true_loss1).abs();
    let bound = epsilon_upper(&params);

    let final_train = trace.final_train_set(split)?;
    let next_round_group =
        disadvantaged_group(&trace.final_model, &final_train, trace.config.metric)?;
    let higher_true_loss_group = usize::from(true_loss1 > true_loss0);

    let arm = if gap <= bound {
        DichotomyArm::WithinBound
    } else if next_round_group == higher_true_loss_group {
        DichotomyArm::SamplesHigherTrueLoss
    } else {
        DichotomyArm::Violated
    };
    Ok(DichotomyReport {
        arm,
        params,
        true_loss0,
        true_loss1,
        gap,
        bound,
        bound_alt: epsilon_upper_alt(&params),
        epsilon: epsilon(&params),
        next_round_group,
        higher_true_loss_group,
    })
}
