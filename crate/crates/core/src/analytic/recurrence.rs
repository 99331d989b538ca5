//! The sample-fraction recurrence and its limit.
//!
//! Round `i` of the idealized strategy trains the population-risk minimizer
//! `c_i = c(lambda_i)` and adds one point: with probability `p` an i.i.d.
//! population draw, otherwise a point from the currently disadvantaged group
//! (group 0 exactly when `c_i >= c_fair`, i.e. when the bias is nonnegative).
//! In expectation the group-0 fraction evolves as
//!
//! ```text
//! lambda_{i+1} = ((n0 + i) lambda_i + (1-p) 1{c_i >= c_fair} + p lambda*) / (n0 + i + 1)
//! ```
//!
//! and converges to `lambda_upper`, `p lambda*`, or `1 - p + p lambda*`
//! depending on where those sit relative to the fair-weight interval.

use super::{lambda_fair_interval, OneDimTheory};
use crate::data::UniformMixtureSpec;
use crate::error::{Error, Result};
use crate::rng::substream;
use rand::Rng;
use serde::{Deserialize, Serialize};

/// State of the recurrence: round index, current group-0 fraction, initial
/// sample size, and the population-sampling probability.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RecurrenceState {
    pub round: usize,
    pub lambda: f64,
    pub n0: usize,
    pub p: f64,
}

impl RecurrenceState {
    pub fn new(n0: usize, lambda0: f64, p: f64) -> Result<Self> {
        if n0 == 0 {
            return Err(Error::Contract("initial sample size must be >= 1".into()));
        }
        if !(0.0..=1.0).contains(&lambda0) {
            return Err(Error::Contract(format!("lambda0 {lambda0} outside [0,1]")));
        }
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::Contract(format!("p {p} outside [0,1]")));
        }
        Ok(RecurrenceState {
            round: 0,
            lambda: lambda0,
            n0,
            p,
        })
    }
}

/// Recurrence driver over a fixed analysis engine; the fair threshold is
/// resolved once at construction.
pub struct Recurrence<'a, T: OneDimTheory + ?Sized> {
    theory: &'a T,
    c_fair: f64,
}

/// Predicted limit of the recurrence for a given `p`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LimitPrediction {
    pub lambda: f64,
    pub c: f64,
}

impl<'a, T: OneDimTheory + ?Sized> Recurrence<'a, T> {
    pub fn new(theory: &'a T) -> Self {
        Recurrence {
            theory,
            c_fair: theory.c_fair(),
        }
    }

    pub fn c_fair(&self) -> f64 {
        self.c_fair
    }

    /// Current round's risk-minimizing threshold.
    pub fn threshold(&self, state: &RecurrenceState) -> f64 {
        self.theory.c_of_lambda(state.lambda)
    }

    fn advance(&self, state: RecurrenceState, group0_mass: f64) -> RecurrenceState {
        let n = (state.n0 + state.round) as f64;
        RecurrenceState {
            round: state.round + 1,
            lambda: (n * state.lambda + group0_mass) / (n + 1.0),
            ..state
        }
    }

    /// Indicator of group 0 being disadvantaged at the current threshold.
    /// Ties (`bias = 0`) resolve to group 0.
    fn group0_disadvantaged(&self, state: &RecurrenceState) -> bool {
        self.theory.c_of_lambda(state.lambda) >= self.c_fair
    }

    /// One expectation-mode step.
    pub fn step_expectation(&self, state: RecurrenceState) -> RecurrenceState {
        let ind = if self.group0_disadvantaged(&state) {
            1.0
        } else {
            0.0
        };
        let mass = (1.0 - state.p) * ind + state.p * self.theory.lambda_star();
        self.advance(state, mass)
    }

    /// One stochastic step: the population branch draws the new point's group
    /// from a Bernoulli with the population weight.
    pub fn step_stochastic(&self, state: RecurrenceState, rng: &mut impl Rng) -> RecurrenceState {
        let from_group0 = if rng.random::<f64>() < state.p {
            rng.random::<f64>() < self.theory.lambda_star()
        } else {
            self.group0_disadvantaged(&state)
        };
        self.advance(state, if from_group0 { 1.0 } else { 0.0 })
    }

    /// Run `rounds` expectation-mode steps.
    pub fn run_expectation(&self, mut state: RecurrenceState, rounds: usize) -> RecurrenceState {
        for _ in 0..rounds {
            state = self.step_expectation(state);
        }
        state
    }

    /// Run `rounds` stochastic steps from a named sub-stream of `seed`.
    pub fn run_stochastic(
        &self,
        mut state: RecurrenceState,
        rounds: usize,
        seed: u64,
    ) -> RecurrenceState {
        let mut rng = substream(seed, "recurrence");
        for _ in 0..rounds {
            state = self.step_stochastic(state, &mut rng);
        }
        state
    }

    /// Expectation-mode trajectory, recording every `sample_every`-th state
    /// (and the final one).
    pub fn trace_expectation(
        &self,
        mut state: RecurrenceState,
        rounds: usize,
        sample_every: usize,
    ) -> Vec<RecurrenceState> {
        let stride = sample_every.max(1);
        let mut out = vec![state];
        for i in 0..rounds {
            state = self.step_expectation(state);
            if (i + 1) % stride == 0 || i + 1 == rounds {
                out.push(state);
            }
        }
        out
    }

    /// The expectation-mode limit. Starting from `lambda_0 = lambda*`, the
    /// fraction converges to `p lambda*` when that exceeds `lambda_upper`, to
    /// `1 - p + p lambda*` when that stays below it, and to `lambda_upper`
    /// (hence the threshold to `c_fair`) otherwise.
    pub fn limit(&self, p: f64) -> LimitPrediction {
        let (_, upper) = lambda_fair_interval(self.theory);
        let ls = self.theory.lambda_star();
        let low = p * ls;
        let high = 1.0 - p + p * ls;
        if low > upper {
            LimitPrediction {
                lambda: low,
                c: self.theory.c_of_lambda(low),
            }
        } else if high <= upper {
            LimitPrediction {
                lambda: high,
                c: self.theory.c_of_lambda(high),
            }
        } else {
            LimitPrediction {
                lambda: upper,
                c: self.c_fair,
            }
        }
    }
}

/// Result of checking the `p = 0`, equal-density convergence-rate bound
/// `|c_fair - c_i| <= 4 (t1 - t0 + 1) / (n0 + i)` from the round where the
/// fraction first reaches one half.
#[derive(Debug, Clone, Serialize)]
pub struct RateCheckReport {
    pub n0: usize,
    pub lambda0: f64,
    pub start_round: usize,
    pub rounds_checked: usize,
    pub bound_numerator: f64,
    /// `(round, |c_fair - c_i|, allowed)` for the first violated round.
    pub first_violation: Option<(usize, f64, f64)>,
    pub max_slack: f64,
}

impl RateCheckReport {
    pub fn pass(&self) -> bool {
        self.first_violation.is_none()
    }
}

/// Run the expectation recurrence with `p = 0` and `lambda_0 = lambda*` on an
/// equal-density spec with `lambda* < 1/2`, asserting the rate bound for all
/// rounds `i >= n0 (1 - 2 lambda_0)`.
pub fn convergence_rate_check(
    spec: &UniformMixtureSpec,
    n0: usize,
    rounds: usize,
) -> Result<RateCheckReport> {
    spec.validate()?;
    let (w0, w1) = (spec.w0(), spec.w1());
    if (w0 - w1).abs() > 1e-12 * w0.max(w1) {
        return Err(Error::Contract(format!(
            "rate bound requires equal densities, got w0={w0} w1={w1}"
        )));
    }
    let lambda0 = spec.lambda_star;
    if lambda0 >= 0.5 {
        return Err(Error::Contract(format!(
            "rate bound requires lambda* < 1/2, got {lambda0}"
        )));
    }
    let engine = super::ExactUniform::new(*spec);
    let recurrence = Recurrence::new(&engine);
    let c_fair = recurrence.c_fair();
    let bound_numerator = 4.0 * (spec.t1 - spec.t0 + 1.0);
    let start_round = (n0 as f64 * (1.0 - 2.0 * lambda0) - 1e-9).ceil().max(0.0) as usize;

    let mut state = RecurrenceState::new(n0, lambda0, 0.0)?;
    let mut first_violation = None;
    let mut max_slack = f64::NEG_INFINITY;
    for i in 0..=rounds {
        if i >= start_round {
            let gap = (c_fair - recurrence.threshold(&state)).abs();
            let allowed = bound_numerator / (n0 + i) as f64;
            max_slack = max_slack.max(gap - allowed);
            if gap > allowed && first_violation.is_none() {
                first_violation = Some((i, gap, allowed));
            }
        }
        if i < rounds {
            state = recurrence.step_expectation(state);
        }
    }
    Ok(RateCheckReport {
        n0,
        lambda0,
        start_round,
        rounds_checked: rounds.saturating_sub(start_round) + 1,
        bound_numerator,
        first_violation,
        max_slack,
    })
}
