//! Group performance functionals and disparity aggregations.

use crate::data::{Dataset, Label};
use crate::error::{Error, Result};
use crate::model::Model;
use serde::{Deserialize, Serialize};

/// The per-group performance functionals available to the sampler and the
/// experiment harnesses. Each maps `(model, group subset)` to `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MetricKind {
    /// Fraction of the group misclassified.
    ZeroOneError,
    /// Fraction of the group's positives misclassified (false-negative rate).
    EqualOpportunityGap,
    /// Worst label-conditional error within the group; its disparity
    /// aggregates the per-label gaps (see [`disparity`]).
    EqualizedOdds,
    /// Fraction of the group predicted positive.
    StatisticalParityRate,
}

impl MetricKind {
    /// Stable CLI spelling.
    pub fn cli_name(self) -> &'static str {
        match self {
            MetricKind::ZeroOneError => "01",
            MetricKind::EqualOpportunityGap => "eqopp",
            MetricKind::EqualizedOdds => "eqodds",
            MetricKind::StatisticalParityRate => "stat-parity",
        }
    }

    pub fn from_cli_name(name: &str) -> Option<Self> {
        match name {
            "01" => Some(MetricKind::ZeroOneError),
            "eqopp" => Some(MetricKind::EqualOpportunityGap),
            "eqodds" => Some(MetricKind::EqualizedOdds),
            "stat-parity" => Some(MetricKind::StatisticalParityRate),
            _ => None,
        }
    }
}

fn fraction(
    model: &Model,
    data: &Dataset,
    select: impl Fn(&crate::data::LabeledPoint) -> bool,
    event: impl Fn(Label, Label) -> bool,
) -> Result<Option<f64>> {
    let mut hits = 0usize;
    let mut total = 0usize;
    for p in data.points().iter().filter(|p| select(p)) {
        let predicted = model.predict(&p.x)?;
        if event(predicted, p.y) {
            hits += 1;
        }
        total += 1;
    }
    Ok((total > 0).then(|| hits as f64 / total as f64))
}

/// Error rate of the model on the points of group `a` with label `y`, or
/// `None` if the group has no such points.
pub fn y_conditional_error(model: &Model, data: &Dataset, a: usize, y: Label) -> Result<Option<f64>> {
    fraction(
        model,
        data,
        |p| p.a == a && p.y == y,
        |pred, truth| pred != truth,
    )
}

fn group_value_opt(
    metric: MetricKind,
    model: &Model,
    data: &Dataset,
    a: usize,
) -> Result<Option<f64>> {
    match metric {
        MetricKind::ZeroOneError => {
            fraction(model, data, |p| p.a == a, |pred, truth| pred != truth)
        }
        MetricKind::EqualOpportunityGap => fraction(
            model,
            data,
            |p| p.a == a && p.y == Label::Pos,
            |pred, truth| pred != truth,
        ),
        MetricKind::EqualizedOdds => {
            let neg = y_conditional_error(model, data, a, Label::Neg)?;
            let pos = y_conditional_error(model, data, a, Label::Pos)?;
            Ok(match (neg, pos) {
                (Some(n), Some(p)) => Some(n.max(p)),
                (Some(n), None) => Some(n),
                (None, Some(p)) => Some(p),
                (None, None) => None,
            })
        }
        MetricKind::StatisticalParityRate => {
            fraction(model, data, |p| p.a == a, |pred, _| pred == Label::Pos)
        }
    }
}

/// Empirical value of the metric on group `a`. Errors if the group (or, for
/// the conditional metrics, its conditioning event) is absent from `data`.
pub fn group_value(metric: MetricKind, model: &Model, data: &Dataset, a: usize) -> Result<f64> {
    group_value_opt(metric, model, data, a)?.ok_or(Error::EmptyGroup(a))
}

/// Per-group metric values; `None` marks groups that cannot be evaluated
/// (absent from the data, or lacking the metric's conditioning event).
pub fn group_values(metric: MetricKind, model: &Model, data: &Dataset) -> Result<Vec<Option<f64>>> {
    (0..data.group_count())
        .map(|a| group_value_opt(metric, model, data, a))
        .collect()
}

fn spread(values: impl Iterator<Item = f64>) -> Option<f64> {
    let mut count = 0usize;
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for v in values {
        lo = lo.min(v);
        hi = hi.max(v);
        count += 1;
    }
    (count >= 2).then_some(hi - lo)
}

/// Largest pairwise gap of the metric across evaluable groups. For equalized
/// odds this is the max over both labels of the label-conditional gap.
pub fn disparity(metric: MetricKind, model: &Model, data: &Dataset) -> Result<f64> {
    if metric == MetricKind::EqualizedOdds {
        let mut worst = None;
        for y in [Label::Neg, Label::Pos] {
            let mut vals = Vec::new();
            for a in 0..data.group_count() {
                if let Some(v) = y_conditional_error(model, data, a, y)? {
                    vals.push(v);
                }
            }
            if let Some(gap) = spread(vals.into_iter()) {
                worst = Some(worst.map_or(gap, |w: f64| w.max(gap)));
            }
        }
        return worst.ok_or_else(|| {
            Error::Contract("equalized odds needs a label shared by >= 2 groups".into())
        });
    }
    let values = group_values(metric, model, data)?;
    spread(values.into_iter().flatten())
        .ok_or_else(|| Error::Contract("disparity needs >= 2 evaluable groups".into()))
}

/// Misclassification fraction over the whole dataset.
pub fn overall_error(model: &Model, data: &Dataset) -> Result<f64> {
    fraction(model, data, |_| true, |pred, truth| pred != truth)?
        .ok_or_else(|| Error::EmptyData("overall_error on empty data".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::LabeledPoint;
    use crate::model::{LinearModel, ThresholdModel};

    fn point(x: f64, y: Label, a: usize) -> LabeledPoint {
        LabeledPoint::new(vec![x], y, a)
    }

    fn two_group_data() -> Dataset {
        // group 0: 4 points, one misclassified by c = 0; group 1: clean
        Dataset::new(vec![
            point(-1.0, Label::Neg, 0),
            point(-0.5, Label::Neg, 0),
            point(1.0, Label::Pos, 0),
            point(-0.2, Label::Pos, 0), // predicted Neg, true Pos
            point(-2.0, Label::Neg, 1),
            point(2.0, Label::Pos, 1),
        ])
        .unwrap()
    }

    fn threshold(c: f64) -> Model {
        Model::Threshold(ThresholdModel { c })
    }

    #[test]
    fn zero_one_counts_misclassifications() {
        let data = two_group_data();
        let v = group_value(MetricKind::ZeroOneError, &threshold(0.0), &data, 0).unwrap();
        assert_eq!(v, 0.25);
        let v1 = group_value(MetricKind::ZeroOneError, &threshold(0.0), &data, 1).unwrap();
        assert_eq!(v1, 0.0);
    }

    #[test]
    fn perfect_classifier_has_zero_error_everywhere() {
        let data = Dataset::new(vec![
            point(-1.0, Label::Neg, 0),
            point(1.0, Label::Pos, 0),
            point(-1.0, Label::Neg, 1),
            point(1.0, Label::Pos, 1),
        ])
        .unwrap();
        for a in 0..2 {
            assert_eq!(
                group_value(MetricKind::ZeroOneError, &threshold(0.0), &data, a).unwrap(),
                0.0
            );
        }
        assert_eq!(overall_error(&threshold(0.0), &data).unwrap(), 0.0);
        assert_eq!(
            disparity(MetricKind::ZeroOneError, &threshold(0.0), &data).unwrap(),
            0.0
        );
    }

    #[test]
    fn constant_positive_predictor_has_parity_rate_one() {
        let data = two_group_data();
        let very_low = threshold(-100.0);
        for a in 0..2 {
            assert_eq!(
                group_value(MetricKind::StatisticalParityRate, &very_low, &data, a).unwrap(),
                1.0
            );
        }
    }

    #[test]
    fn equal_opportunity_looks_only_at_positives() {
        let data = two_group_data();
        // group 0 positives: x = 1.0 (correct), x = -0.2 (missed) -> 0.5
        let v = group_value(MetricKind::EqualOpportunityGap, &threshold(0.0), &data, 0).unwrap();
        assert_eq!(v, 0.5);
    }

    #[test]
    fn equal_opportunity_errors_without_positives() {
        let data = Dataset::new(vec![point(-1.0, Label::Neg, 0), point(1.0, Label::Pos, 1)]).unwrap();
        assert!(matches!(
            group_value(MetricKind::EqualOpportunityGap, &threshold(0.0), &data, 0),
            Err(Error::EmptyGroup(0))
        ));
        // but the skipping variant reports None instead
        let values = group_values(MetricKind::EqualOpportunityGap, &threshold(0.0), &data).unwrap();
        assert_eq!(values[0], None);
        assert_eq!(values[1], Some(0.0));
    }

    #[test]
    fn disparity_is_max_pairwise_gap() {
        let data = two_group_data();
        let d = disparity(MetricKind::ZeroOneError, &threshold(0.0), &data).unwrap();
        assert_eq!(d, 0.25);
    }

    #[test]
    fn disparity_on_three_groups_uses_extremes() {
        let data = Dataset::new(vec![
            point(-1.0, Label::Neg, 0),
            point(0.5, Label::Pos, 0),
            point(-0.5, Label::Pos, 1), // missed
            point(0.5, Label::Pos, 1),
            point(-0.5, Label::Pos, 2), // missed
            point(-0.7, Label::Pos, 2), // missed
        ])
        .unwrap();
        let d = disparity(MetricKind::ZeroOneError, &threshold(0.0), &data).unwrap();
        assert_eq!(d, 1.0); // group 2 fully wrong, group 0 fully right
    }

    #[test]
    fn overall_error_decomposes_over_groups() {
        let data = two_group_data();
        let model = threshold(0.0);
        let total = overall_error(&model, &data).unwrap();
        let mut weighted = 0.0;
        for a in 0..data.group_count() {
            let na = data.group_size(a) as f64;
            weighted +=
                na / data.len() as f64 * group_value(MetricKind::ZeroOneError, &model, &data, a).unwrap();
        }
        assert!((total - weighted).abs() < 1e-12);
    }

    #[test]
    fn equalized_odds_takes_worst_label_gap() {
        // group 0: negatives perfect, positives 50% missed
        // group 1: negatives 100% wrong, positives perfect
        let data = Dataset::new(vec![
            point(-1.0, Label::Neg, 0),
            point(1.0, Label::Pos, 0),
            point(-0.2, Label::Pos, 0),
            point(0.5, Label::Neg, 1), // predicted Pos
            point(1.0, Label::Pos, 1),
        ])
        .unwrap();
        let model = threshold(0.0);
        let d = disparity(MetricKind::EqualizedOdds, &model, &data).unwrap();
        // negative-label gap: |0 - 1| = 1; positive-label gap: |0.5 - 0| = 0.5
        assert_eq!(d, 1.0);
    }

    #[test]
    fn metrics_are_invariant_to_score_rescaling() {
        let data = Dataset::new(vec![
            LabeledPoint::new(vec![1.0, 2.0], Label::Pos, 0),
            LabeledPoint::new(vec![-1.0, 0.5], Label::Neg, 0),
            LabeledPoint::new(vec![0.3, -0.4], Label::Pos, 1),
            LabeledPoint::new(vec![-2.0, 1.0], Label::Neg, 1),
        ])
        .unwrap();
        let m1 = Model::Linear(LinearModel {
            w: vec![0.8, -0.3],
            b: 0.1,
        });
        let m2 = Model::Linear(LinearModel {
            w: vec![8.0, -3.0],
            b: 1.0,
        });
        for metric in [
            MetricKind::ZeroOneError,
            MetricKind::EqualOpportunityGap,
            MetricKind::EqualizedOdds,
            MetricKind::StatisticalParityRate,
        ] {
            let v1 = group_values(metric, &m1, &data).unwrap();
            let v2 = group_values(metric, &m2, &data).unwrap();
            assert_eq!(v1, v2, "{metric:?}");
        }
    }

    #[test]
    fn cli_names_round_trip() {
        for metric in [
            MetricKind::ZeroOneError,
            MetricKind::EqualOpportunityGap,
            MetricKind::EqualizedOdds,
            MetricKind::StatisticalParityRate,
        ] {
            assert_eq!(MetricKind::from_cli_name(metric.cli_name()), Some(metric));
        }
        assert_eq!(MetricKind::from_cli_name("bogus"), None);
    }
}
