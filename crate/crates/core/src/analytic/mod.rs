//! Exact and numeric analysis of the idealized 1-D two-group setting.
//!
//! Two groups carry marginal feature distributions with thresholds `t0 < t1`
//! labeling their points. For a mixture weight `lambda` on group 0, the
//! population margin risk of a threshold classifier `sign(x - c)` has a unique
//! minimizer `c(lambda)`, a decreasing map with `c(0) = t1` and `c(1) = t0`.
//! The bias curve (group-0 error minus group-1 error) has a unique root
//! `c_fair` in `(t0, t1)`, and the weights whose risk minimizer is `c_fair`
//! form the interval `[lambda_lower, lambda_upper]`.
//!
//! [`uniform`] implements the closed forms available for uniform marginals
//! under hinge loss; [`numeric`] covers general marginals (including
//! Gaussians) with CDF evaluations and adaptive quadrature; [`recurrence`]
//! simulates the sample-fraction recurrence driven by these maps and predicts
//! its limit.

pub mod numeric;
pub mod recurrence;
pub mod uniform;

pub use numeric::{Marginal, MarginalPair, NumericTheory};
pub use recurrence::{
    convergence_rate_check, LimitPrediction, RateCheckReport, Recurrence, RecurrenceState,
};
pub use uniform::{bias, c_fair, c_of_lambda, hinge_risk, ExactUniform, RiskCurve};

/// The handful of quantities every 1-D two-group analysis exposes.
pub trait OneDimTheory {
    /// The per-group label thresholds `(t0, t1)`.
    fn thresholds(&self) -> (f64, f64);
    /// Population fraction of group 0.
    fn lambda_star(&self) -> f64;
    /// The threshold equalizing the two groups' 0-1 errors.
    fn c_fair(&self) -> f64;
    /// The minimizer of the `lambda`-weighted population margin risk.
    fn c_of_lambda(&self, lambda: f64) -> f64;
    /// Group-0 error minus group-1 error of `sign(x - c)`.
    fn bias(&self, c: f64) -> f64;
    /// Population 0-1 error of `sign(x - c)` on one group.
    fn group_zero_one_loss(&self, group: usize, c: f64) -> f64;
}

/// The preimage interval `{lambda : c(lambda) = c_fair}`, found by bisection
/// on the decreasing minimizer map. Both endpoints coincide whenever the map
/// is strictly decreasing.
pub fn lambda_fair_interval<T: OneDimTheory + ?Sized>(theory: &T) -> (f64, f64) {
    let cf = theory.c_fair();
    let bisect = |keep_left: fn(f64, f64) -> bool| {
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        for _ in 0..64 {
            let mid = 0.5 * (lo + hi);
            if keep_left(theory.c_of_lambda(mid), cf) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    };
    let upper = bisect(|c, cf| c >= cf);
    let lower = bisect(|c, cf| c > cf);
    (lower.min(upper), upper)
}
