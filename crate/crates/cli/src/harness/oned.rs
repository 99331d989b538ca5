//! The 1-D SGD scenario: threshold learning by single-point updates with
//! fresh draws from a two-group generative model, plus analytic overlays
//! (fair threshold, risk minimizer, recurrence limit) for the same model.

use crate::emit::CsvTable;
use fairsample_core::analytic::{
    LimitPrediction, MarginalPair, NumericTheory, Recurrence,
};
use fairsample_core::data::Label;
use fairsample_core::error::Error;
use fairsample_core::loss::MarginLossKind;
use fairsample_core::model::{fit_threshold, sgd_step, Model};
use fairsample_core::rng::substream;
use fairsample_core::sampler::LrSchedule;
use fairsample_core::Result;
use rand::Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OnedConfig {
    pub pair: MarginalPair,
    pub loss: MarginLossKind,
    pub p: f64,
    /// Validation points drawn from each group.
    pub validation_per_group: usize,
    pub rounds: usize,
    pub lr: LrSchedule,
    /// Initial sample size.
    pub n0: usize,
    pub seed: u64,
    /// Trace stride; the final round is always recorded.
    pub record_every: usize,
}

impl OnedConfig {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.p) {
            return Err(Error::Contract(format!("p {} outside [0,1]", self.p)));
        }
        if self.rounds == 0 || self.n0 == 0 || self.validation_per_group == 0 {
            return Err(Error::Contract(
                "rounds, n0, and validation size must be >= 1".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OnedRound {
    pub t: usize,
    pub c: f64,
    pub disadvantaged: usize,
    pub coin_population: bool,
    pub sampled_group: usize,
    /// True (analytic) per-group errors of the current threshold.
    pub true_error0: f64,
    pub true_error1: f64,
    /// Fraction of group-1 points among all samples seen so far.
    pub group1_fraction: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OnedResult {
    pub config: OnedConfig,
    pub c_initial: f64,
    pub c_final: f64,
    pub final_true_error0: f64,
    pub final_true_error1: f64,
    /// Root of the bias curve for the generating pair.
    pub c_fair: f64,
    /// Population risk minimizer `c(lambda*)`.
    pub risk_minimizer: f64,
    /// Predicted limit of the sample-fraction recurrence at this `p`.
    pub limit: LimitPrediction,
    pub trace: Vec<OnedRound>,
}

fn draw_group(pair: &MarginalPair, group: usize, rng: &mut impl Rng) -> (f64, Label) {
    let (marginal, t) = if group == 0 {
        (pair.g0, pair.t0)
    } else {
        (pair.g1, pair.t1)
    };
    let x = marginal.sample(rng);
    (x, Label::from_sign(x - t))
}

/// Run the scenario: fit an initial threshold on `n0` population draws, then
/// repeat `rounds` times: estimate per-group errors on a fixed per-group
/// validation sample, draw a fresh point from the population (probability
/// `p`) or from the disadvantaged group, and apply one SGD update with
/// `lr(t)`.
pub fn run_oned_scenario(config: &OnedConfig) -> Result<OnedResult> {
    config.validate()?;
    let pair = config.pair;

    let mut init_rng = substream(config.seed, "oned-initial");
    let mut initial = Vec::with_capacity(config.n0);
    let mut group_counts = [0usize; 2];
    for _ in 0..config.n0 {
        let group = usize::from(init_rng.random::<f64>() >= pair.lambda_star);
        let (x, y) = draw_group(&pair, group, &mut init_rng);
        group_counts[group] += 1;
        initial.push(fairsample_core::data::LabeledPoint::new(vec![x], y, group));
    }
    let initial = fairsample_core::data::Dataset::with_group_count(initial, 2)?;
    let mut model = Model::Threshold(fit_threshold(&initial, config.loss)?);
    let c_initial = model.as_threshold().unwrap().c;

    // fixed per-group validation samples; only x and the group threshold
    // matter since labels are noise-free
    let mut val_rng = substream(config.seed, "oned-validation");
    let mut validation: [Vec<(f64, Label)>; 2] = [Vec::new(), Vec::new()];
    for (group, bucket) in validation.iter_mut().enumerate() {
        for _ in 0..config.validation_per_group {
            bucket.push(draw_group(&pair, group, &mut val_rng));
        }
    }
    let empirical_error = |bucket: &[(f64, Label)], c: f64| {
        bucket
            .iter()
            .filter(|(x, y)| Label::from_sign(x - c) != *y)
            .count() as f64
            / bucket.len() as f64
    };

    let mut coin_rng = substream(config.seed, "oned-coin");
    let mut draw_rng = substream(config.seed, "oned-draw");
    let stride = config.record_every.max(1);
    let mut trace = Vec::new();
    for t in 1..=config.rounds {
        let c = model.as_threshold().unwrap().c;
        let err0 = empirical_error(&validation[0], c);
        let err1 = empirical_error(&validation[1], c);
        // argmax with ties toward group 0
        let disadvantaged = usize::from(err1 > err0);

        let coin_population = coin_rng.random::<f64>() < config.p;
        let group = if coin_population {
            usize::from(draw_rng.random::<f64>() >= pair.lambda_star)
        } else {
            disadvantaged
        };
        let (x, y) = draw_group(&pair, group, &mut draw_rng);
        group_counts[group] += 1;
        let point = fairsample_core::data::LabeledPoint::new(vec![x], y, group);
        model = sgd_step(&model, &point, config.lr.lr(t), config.loss, 0.0)?;

        if t % stride == 0 || t == config.rounds {
            let c_now = model.as_threshold().unwrap().c;
            trace.push(OnedRound {
                t,
                c: c_now,
                disadvantaged,
                coin_population,
                sampled_group: group,
                true_error0: pair.group_zero_one_loss(0, c_now),
                true_error1: pair.group_zero_one_loss(1, c_now),
                group1_fraction: group_counts[1] as f64
                    / (group_counts[0] + group_counts[1]) as f64,
            });
        }
    }

    let c_final = model.as_threshold().unwrap().c;
    let theory = NumericTheory::new(pair, config.loss);
    let limit = Recurrence::new(&theory).limit(config.p);
    Ok(OnedResult {
        config: config.clone(),
        c_initial,
        c_final,
        final_true_error0: pair.group_zero_one_loss(0, c_final),
        final_true_error1: pair.group_zero_one_loss(1, c_final),
        c_fair: pair.c_fair(),
        risk_minimizer: pair.c_of_lambda(config.loss, pair.lambda_star),
        limit,
        trace,
    })
}

impl CsvTable for OnedResult {
    fn csv_header() -> &'static [&'static str] {
        &[
            "t",
            "c",
            "disadvantaged",
            "coin_population",
            "sampled_group",
            "true_error0",
            "true_error1",
            "group1_fraction",
        ]
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.trace
            .iter()
            .map(|r| {
                vec![
                    r.t.to_string(),
                    r.c.to_string(),
                    r.disadvantaged.to_string(),
                    r.coin_population.to_string(),
                    r.sampled_group.to_string(),
                    r.true_error0.to_string(),
                    r.true_error1.to_string(),
                    r.group1_fraction.to_string(),
                ]
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use fairsample_core::analytic::Marginal;

    fn uniform_pair() -> MarginalPair {
        // overlapping uniforms with distinct thresholds
        MarginalPair::new(
            Marginal::Uniform { lo: 0.0, hi: 10.0 },
            7.0,
            Marginal::Uniform { lo: 6.0, hi: 12.0 },
            9.0,
            0.85,
        )
        .unwrap()
    }

    fn base_config(pair: MarginalPair) -> OnedConfig {
        OnedConfig {
            pair,
            loss: MarginLossKind::Hinge,
            p: 0.0,
            validation_per_group: 1000,
            rounds: 3000,
            lr: LrSchedule::inv_sqrt(),
            n0: 50,
            seed: 7,
            record_every: 100,
        }
    }

    #[test]
    fn uniform_scenario_approaches_fair_threshold() {
        let pair = uniform_pair();
        // c_fair = (w0 t0 + w1 t1)/(w0 + w1) with w0 = 1/10, w1 = 1/6
        let cf = pair.c_fair();
        assert!((cf - 8.25).abs() < 1e-9, "c_fair = {cf}");
        let result = run_oned_scenario(&base_config(pair)).unwrap();
        assert!(
            (result.c_final - cf).abs() < 0.05,
            "c_final {} vs c_fair {cf}",
            result.c_final
        );
        let gap = (result.final_true_error0 - result.final_true_error1).abs();
        assert!(gap < 0.03, "gap = {gap}");
    }

    #[test]
    fn identical_groups_split_draws_evenly() {
        let g = Marginal::Uniform { lo: 0.0, hi: 10.0 };
        let pair = MarginalPair::new(g, 5.0, g, 5.0, 0.5).unwrap();
        // population draws split 1/2 exactly by construction
        let mut config = base_config(pair);
        config.rounds = 4000;
        config.p = 1.0;
        let result = run_oned_scenario(&config).unwrap();
        let last = result.trace.last().unwrap();
        assert!(
            (last.group1_fraction - 0.5).abs() < 0.05,
            "group-1 fraction {}",
            last.group1_fraction
        );
        // identical groups carry identical true errors at any threshold
        for r in &result.trace {
            assert_eq!(r.true_error0, r.true_error1);
        }
        // with p = 0 a single run may ride one validation draw's noise, but
        // group exchangeability keeps the ensemble mean at 1/2
        let mut fractions = Vec::new();
        for seed in 0..8 {
            let mut cfg = base_config(pair);
            cfg.rounds = 1500;
            cfg.p = 0.0;
            cfg.seed = seed;
            let r = run_oned_scenario(&cfg).unwrap();
            fractions.push(r.trace.last().unwrap().group1_fraction);
        }
        let mean = fractions.iter().sum::<f64>() / fractions.len() as f64;
        assert!((mean - 0.5).abs() < 0.2, "ensemble mean {mean}: {fractions:?}");
    }

    #[test]
    fn mixed_sampling_lands_between_risk_minimizer_and_fair_threshold() {
        let pair = MarginalPair::new(
            Marginal::Gaussian { mean: 0.0, var: 1.0 },
            0.0,
            Marginal::Gaussian { mean: 2.0, var: 2.0 },
            1.4,
            0.85,
        )
        .unwrap();
        let config = OnedConfig {
            pair,
            loss: MarginLossKind::Hinge,
            p: 0.8,
            validation_per_group: 10_000,
            rounds: 5_000,
            lr: LrSchedule::damped_inv_sqrt(),
            n0: 50,
            seed: 0,
            record_every: 1000,
        };
        let result = run_oned_scenario(&config).unwrap();
        assert!(
            result.risk_minimizer < result.c_final && result.c_final < result.c_fair,
            "c_final {} should lie between c* {} and c_fair {}",
            result.c_final,
            result.risk_minimizer,
            result.c_fair
        );
        // and near the predicted recurrence limit for this p
        assert!(
            (result.c_final - result.limit.c).abs() < 0.15,
            "c_final {} vs predicted {}",
            result.c_final,
            result.limit.c
        );
        // group 0 pays relative to the pure risk minimizer, group 1 gains
        let e0_at_min = pair.group_zero_one_loss(0, result.risk_minimizer);
        let e1_at_min = pair.group_zero_one_loss(1, result.risk_minimizer);
        assert!(result.final_true_error0 > e0_at_min);
        assert!(result.final_true_error1 < e1_at_min);
    }

    #[test]
    fn scenario_is_deterministic() {
        let config = base_config(uniform_pair());
        let a = run_oned_scenario(&config).unwrap();
        let b = run_oned_scenario(&config).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn logistic_loss_variant_runs_and_converges_loosely() {
        let mut config = base_config(uniform_pair());
        config.loss = MarginLossKind::Logistic;
        config.rounds = 4000;
        let result = run_oned_scenario(&config).unwrap();
        assert!(
            (result.c_final - result.c_fair).abs() < 0.35,
            "c_final {} vs c_fair {}",
            result.c_final,
            result.c_fair
        );
    }
}
