//! Classifier families and their trainers: 1-D thresholds fit by convex
//! search, linear models fit by full-batch gradient descent on the logistic
//! objective, and single-point SGD updates for both.

use crate::analytic::numeric::golden_min;
use crate::data::{Dataset, Label, LabeledPoint};
use crate::error::{Error, Result};
use crate::loss::MarginLossKind;
use serde::{Deserialize, Serialize};

/// `sign(x - c)` over 1-D features.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThresholdModel {
    pub c: f64,
}

impl ThresholdModel {
    pub fn score(&self, x: f64) -> f64 {
        x - self.c
    }

    pub fn predict(&self, x: f64) -> Label {
        Label::from_sign(self.score(x))
    }
}

/// `sign(w . x + b)` over d-dimensional features.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearModel {
    pub w: Vec<f64>,
    pub b: f64,
}

impl LinearModel {
    pub fn zeros(dim: usize) -> Self {
        LinearModel {
            w: vec![0.0; dim],
            b: 0.0,
        }
    }

    pub fn score(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.w.len() {
            return Err(Error::DimensionMismatch {
                expected: self.w.len(),
                got: x.len(),
            });
        }
        Ok(self.w.iter().zip(x).map(|(wi, xi)| wi * xi).sum::<f64>() + self.b)
    }
}

/// Either classifier family. Serializes as `{"kind": "threshold", "c": ...}`
/// or `{"kind": "linear", "w": [...], "b": ...}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Model {
    Threshold(ThresholdModel),
    Linear(LinearModel),
}

impl Model {
    pub fn score(&self, x: &[f64]) -> Result<f64> {
        match self {
            Model::Threshold(m) => {
                if x.len() != 1 {
                    return Err(Error::DimensionMismatch {
                        expected: 1,
                        got: x.len(),
                    });
                }
                Ok(m.score(x[0]))
            }
            Model::Linear(m) => m.score(x),
        }
    }

    /// `sign(score)` with `sign(0) = +1`.
    pub fn predict(&self, x: &[f64]) -> Result<Label> {
        Ok(Label::from_sign(self.score(x)?))
    }

    pub fn as_threshold(&self) -> Option<&ThresholdModel> {
        match self {
            Model::Threshold(m) => Some(m),
            Model::Linear(_) => None,
        }
    }
}

fn empirical_threshold_risk(data: &Dataset, kind: MarginLossKind, c: f64) -> f64 {
    let n = data.len() as f64;
    data.points()
        .iter()
        .map(|p| kind.value(p.y.signum() * (p.x1() - c)))
        .sum::<f64>()
        / n
}

/// Fit the threshold minimizing the empirical margin risk over
/// `[min x - 1, max x + 1]` by golden-section search on the convex objective.
/// A flat minimizing region resolves to its midpoint.
pub fn fit_threshold(data: &Dataset, kind: MarginLossKind) -> Result<ThresholdModel> {
    if data.is_empty() {
        return Err(Error::EmptyData("fit_threshold needs at least 1 point".into()));
    }
    if data.dim() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            got: data.dim(),
        });
    }
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for p in data.points() {
        if !p.x1().is_finite() {
            return Err(Error::Contract("non-finite feature".into()));
        }
        lo = lo.min(p.x1());
        hi = hi.max(p.x1());
    }
    let (lo, hi) = (lo - 1.0, hi + 1.0);
    let risk = |c: f64| empirical_threshold_risk(data, kind, c);
    let (c_star, f_star) = golden_min(&risk, lo, hi, 1e-10);

    // The hinge objective can be flat at its minimum; take the midpoint of the
    // minimizing level set, located by bisection on each side.
    let eps = 1e-12 * f_star.abs().max(1.0);
    let edge = |mut inside: f64, mut outside: f64| {
        if risk(outside) <= f_star + eps {
            return outside;
        }
        for _ in 0..60 {
            let mid = 0.5 * (inside + outside);
            if risk(mid) <= f_star + eps {
                inside = mid;
            } else {
                outside = mid;
            }
        }
        inside
    };
    let left = edge(c_star, lo);
    let right = edge(c_star, hi);
    Ok(ThresholdModel {
        c: 0.5 * (left + right),
    })
}

/// Stopping and regularization knobs for [`fit_logistic`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogisticConfig {
    pub max_iter: usize,
    pub tol: f64,
    pub l2: f64,
}

impl Default for LogisticConfig {
    fn default() -> Self {
        LogisticConfig {
            max_iter: 10_000,
            tol: 1e-6,
            l2: 1e-4,
        }
    }
}

struct LogisticObjective<'a> {
    data: &'a Dataset,
    weights: Option<&'a [f64]>,
    weight_sum: f64,
    l2: f64,
}

impl<'a> LogisticObjective<'a> {
    fn value(&self, w: &[f64], b: f64) -> f64 {
        let mut total = 0.0;
        for (i, p) in self.data.points().iter().enumerate() {
            let s = p.x.iter().zip(w).map(|(xi, wi)| xi * wi).sum::<f64>() + b;
            let z = p.y.signum() * s;
            let wt = self.weights.map_or(1.0, |ws| ws[i]);
            total += wt * MarginLossKind::Logistic.value(z);
        }
        total / self.weight_sum + 0.5 * self.l2 * w.iter().map(|wi| wi * wi).sum::<f64>()
    }

    fn gradient(&self, w: &[f64], b: f64) -> (Vec<f64>, f64) {
        let mut gw = vec![0.0; w.len()];
        let mut gb = 0.0;
        for (i, p) in self.data.points().iter().enumerate() {
            let s = p.x.iter().zip(w).map(|(xi, wi)| xi * wi).sum::<f64>() + b;
            let y = p.y.signum();
            let dl = MarginLossKind::Logistic.dvalue_dz(y * s) * y;
            let wt = self.weights.map_or(1.0, |ws| ws[i]);
            for (g, xi) in gw.iter_mut().zip(&p.x) {
                *g += wt * dl * xi;
            }
            gb += wt * dl;
        }
        for (g, wi) in gw.iter_mut().zip(w) {
            *g = *g / self.weight_sum + self.l2 * wi;
        }
        (gw, gb / self.weight_sum)
    }
}

fn fit_logistic_inner(
    data: &Dataset,
    weights: Option<&[f64]>,
    init: Option<&LinearModel>,
    config: &LogisticConfig,
) -> Result<LinearModel> {
    if data.is_empty() {
        return Err(Error::EmptyData("fit_logistic needs at least 1 point".into()));
    }
    for p in data.points() {
        if p.x.iter().any(|v| !v.is_finite()) {
            return Err(Error::Contract("non-finite feature".into()));
        }
    }
    let weight_sum = match weights {
        Some(ws) => {
            if ws.len() != data.len() {
                return Err(Error::Contract(format!(
                    "{} weights for {} points",
                    ws.len(),
                    data.len()
                )));
            }
            if ws.iter().any(|&w| w < 0.0 || !w.is_finite()) {
                return Err(Error::Contract("weights must be finite and >= 0".into()));
            }
            let s: f64 = ws.iter().sum();
            if s <= 0.0 {
                return Err(Error::Contract("weights must not sum to zero".into()));
            }
            s
        }
        None => data.len() as f64,
    };
    let objective = LogisticObjective {
        data,
        weights,
        weight_sum,
        l2: config.l2,
    };

    let mut model = match init {
        Some(m) if m.w.len() == data.dim() => m.clone(),
        _ => LinearModel::zeros(data.dim()),
    };
    let mut value = objective.value(&model.w, model.b);
    for _ in 0..config.max_iter {
        let (gw, gb) = objective.gradient(&model.w, model.b);
        let gnorm2 = gw.iter().map(|g| g * g).sum::<f64>() + gb * gb;
        if gnorm2.sqrt() <= config.tol {
            break;
        }
        // backtracking line search with the Armijo condition
        let mut step = 1.0;
        let mut accepted = false;
        for _ in 0..60 {
            let w_try: Vec<f64> = model.w.iter().zip(&gw).map(|(wi, g)| wi - step * g).collect();
            let b_try = model.b - step * gb;
            let v_try = objective.value(&w_try, b_try);
            if v_try <= value - 1e-4 * step * gnorm2 {
                model.w = w_try;
                model.b = b_try;
                value = v_try;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            break; // no descent step at machine precision
        }
    }
    Ok(model)
}

/// Full-batch logistic regression with l2 regularization on the weights
/// (never the intercept). Deterministic given the data and config.
pub fn fit_logistic(data: &Dataset, config: &LogisticConfig) -> Result<LinearModel> {
    fit_logistic_inner(data, None, None, config)
}

/// [`fit_logistic`] with per-point sample weights.
pub fn fit_logistic_weighted(
    data: &Dataset,
    weights: &[f64],
    config: &LogisticConfig,
) -> Result<LinearModel> {
    fit_logistic_inner(data, Some(weights), None, config)
}

/// [`fit_logistic`] warm-started from a previous solution, for retraining on
/// a slowly growing set.
pub fn fit_logistic_warm(
    data: &Dataset,
    init: &LinearModel,
    config: &LogisticConfig,
) -> Result<LinearModel> {
    fit_logistic_inner(data, None, Some(init), config)
}

/// One subgradient step on `loss(y * score(x)) + l2/2 ||w||^2` at a single
/// point. The l2 term applies to linear weights only.
pub fn sgd_step(
    model: &Model,
    point: &LabeledPoint,
    lr: f64,
    kind: MarginLossKind,
    l2: f64,
) -> Result<Model> {
    if lr <= 0.0 {
        return Err(Error::Contract(format!("learning rate must be > 0, got {lr}")));
    }
    let y = point.y.signum();
    match model {
        Model::Threshold(m) => {
            if point.x.len() != 1 {
                return Err(Error::DimensionMismatch {
                    expected: 1,
                    got: point.x.len(),
                });
            }
            let z = y * (point.x1() - m.c);
            // d/dc loss(y (x - c)) = -y loss'(z)
            let grad = -y * kind.dvalue_dz(z);
            Ok(Model::Threshold(ThresholdModel { c: m.c - lr * grad }))
        }
        Model::Linear(m) => {
            let s = m.score(&point.x)?;
            let dl = kind.dvalue_dz(y * s) * y;
            let w = m
                .w
                .iter()
                .zip(&point.x)
                .map(|(wi, xi)| wi - lr * (dl * xi + l2 * wi))
                .collect();
            Ok(Model::Linear(LinearModel {
                w,
                b: m.b - lr * dl,
            }))
        }
    }
}
