//! Plot-ready export of the exact 1-D analysis.

use crate::emit::CsvTable;
use fairsample_core::analytic::{
    lambda_fair_interval, ExactUniform, LimitPrediction, OneDimTheory, Recurrence, RecurrenceState,
};
use fairsample_core::data::UniformMixtureSpec;
use fairsample_core::Result;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyticConfig {
    pub spec: UniformMixtureSpec,
    pub p: f64,
    /// Expectation-mode recurrence rounds to simulate.
    pub rounds: usize,
    pub n0: usize,
    /// Number of minimizer-curve samples over lambda in [0, 1].
    pub curve_samples: usize,
    /// Recurrence trace stride.
    pub trace_every: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub lambda: f64,
    pub c: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RecurrencePoint {
    pub round: usize,
    pub lambda: f64,
    pub c: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyticReport {
    pub config: AnalyticConfig,
    pub c_fair: f64,
    pub lambda_interval: (f64, f64),
    pub curve: Vec<CurvePoint>,
    pub recurrence: Vec<RecurrencePoint>,
    pub limit: LimitPrediction,
}

pub fn analytic_report(config: &AnalyticConfig) -> Result<AnalyticReport> {
    config.spec.validate()?;
    let engine = ExactUniform::new(config.spec);
    let recurrence = Recurrence::new(&engine);
    let samples = config.curve_samples.max(2);
    let curve = (0..samples)
        .map(|i| {
            let lambda = i as f64 / (samples - 1) as f64;
            CurvePoint {
                lambda,
                c: engine.c_of_lambda(lambda),
            }
        })
        .collect();
    let state = RecurrenceState::new(config.n0, config.spec.lambda_star, config.p)?;
    let trace = recurrence
        .trace_expectation(state, config.rounds, config.trace_every)
        .into_iter()
        .map(|s| RecurrencePoint {
            round: s.round,
            lambda: s.lambda,
            c: engine.c_of_lambda(s.lambda),
        })
        .collect();
    Ok(AnalyticReport {
        config: config.clone(),
        c_fair: engine.c_fair(),
        lambda_interval: lambda_fair_interval(&engine),
        curve,
        recurrence: trace,
        limit: recurrence.limit(config.p),
    })
}

impl CsvTable for AnalyticReport {
    fn csv_header() -> &'static [&'static str] {
        &["section", "index", "lambda", "c"]
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        let mut rows = Vec::new();
        for p in &self.curve {
            rows.push(vec![
                "curve".into(),
                String::new(),
                p.lambda.to_string(),
                p.c.to_string(),
            ]);
        }
        for p in &self.recurrence {
            rows.push(vec![
                "recurrence".into(),
                p.round.to_string(),
                p.lambda.to_string(),
                p.c.to_string(),
            ]);
        }
        rows.push(vec![
            "limit".into(),
            String::new(),
            self.limit.lambda.to_string(),
            self.limit.c.to_string(),
        ]);
        rows
    }
}
