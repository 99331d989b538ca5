//! General-marginal 1-D analysis via CDF evaluations and quadrature.
//!
//! This path handles marginals without closed-form risk expressions (Gaussians
//! in particular) and uniform pairs that violate the interval-ordering chain
//! of the exact engine. Bias values come straight from the CDFs, the fair
//! threshold from bisection, risks from adaptive quadrature, and the risk
//! minimizer from golden-section search on the integrated risk.

use super::OneDimTheory;
use crate::data::{GaussianMixtureSpec, UniformMixtureSpec};
use crate::error::{Error, Result};
use crate::loss::MarginLossKind;
use rand::Rng;

const SQRT_2: f64 = std::f64::consts::SQRT_2;

/// A 1-D marginal feature distribution.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum Marginal {
    Uniform { lo: f64, hi: f64 },
    Gaussian { mean: f64, var: f64 },
}

impl Marginal {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Marginal::Uniform { lo, hi } if lo >= hi => Err(Error::InvalidSpec(format!(
                "uniform marginal needs lo < hi, got [{lo}, {hi}]"
            ))),
            Marginal::Gaussian { var, .. } if var <= 0.0 => Err(Error::InvalidSpec(format!(
                "gaussian marginal needs positive variance, got {var}"
            ))),
            _ => Ok(()),
        }
    }

    pub fn cdf(&self, x: f64) -> f64 {
        match *self {
            Marginal::Uniform { lo, hi } => ((x - lo) / (hi - lo)).clamp(0.0, 1.0),
            Marginal::Gaussian { mean, var } => {
                0.5 * (1.0 + libm::erf((x - mean) / (var.sqrt() * SQRT_2)))
            }
        }
    }

    pub fn pdf(&self, x: f64) -> f64 {
        match *self {
            Marginal::Uniform { lo, hi } => {
                if x >= lo && x <= hi {
                    1.0 / (hi - lo)
                } else {
                    0.0
                }
            }
            Marginal::Gaussian { mean, var } => {
                let z = (x - mean) / var.sqrt();
                (-0.5 * z * z).exp() / (var.sqrt() * (2.0 * std::f64::consts::PI).sqrt())
            }
        }
    }

    /// Interval carrying (numerically) all of the mass.
    pub fn support(&self) -> (f64, f64) {
        match *self {
            Marginal::Uniform { lo, hi } => (lo, hi),
            Marginal::Gaussian { mean, var } => {
                let s = 12.0 * var.sqrt();
                (mean - s, mean + s)
            }
        }
    }

    pub fn sample(&self, rng: &mut impl Rng) -> f64 {
        match *self {
            Marginal::Uniform { lo, hi } => rng.random_range(lo..hi),
            Marginal::Gaussian { mean, var } => {
                use rand_distr::Distribution;
                rand_distr::Normal::new(mean, var.sqrt()).unwrap().sample(rng)
            }
        }
    }
}

/// Two group marginals, their label thresholds, and the population weight of
/// group 0. `t0 == t1` (identical labeling) is allowed; each threshold must
/// carry positive density so that the bias curve actually crosses zero.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct MarginalPair {
    pub g0: Marginal,
    pub t0: f64,
    pub g1: Marginal,
    pub t1: f64,
    pub lambda_star: f64,
}

impl MarginalPair {
    pub fn new(g0: Marginal, t0: f64, g1: Marginal, t1: f64, lambda_star: f64) -> Result<Self> {
        g0.validate()?;
        g1.validate()?;
        if t0 > t1 {
            return Err(Error::InvalidSpec(format!("need t0 <= t1, got {t0} > {t1}")));
        }
        if !(lambda_star > 0.0 && lambda_star < 1.0) {
            return Err(Error::InvalidSpec(format!(
                "lambda_star must lie in (0,1), got {lambda_star}"
            )));
        }
        for (m, t) in [(g0, t0), (g1, t1)] {
            let (lo, hi) = m.support();
            if t <= lo || t >= hi {
                return Err(Error::InvalidSpec(format!(
                    "threshold {t} falls outside the open support ({lo}, {hi})"
                )));
            }
        }
        Ok(MarginalPair {
            g0,
            t0,
            g1,
            t1,
            lambda_star,
        })
    }

    pub fn from_uniform(spec: &UniformMixtureSpec) -> Self {
        MarginalPair {
            g0: Marginal::Uniform {
                lo: spec.alpha0,
                hi: spec.beta0,
            },
            t0: spec.t0,
            g1: Marginal::Uniform {
                lo: spec.alpha1,
                hi: spec.beta1,
            },
            t1: spec.t1,
            lambda_star: spec.lambda_star,
        }
    }

    pub fn from_gaussian(spec: &GaussianMixtureSpec) -> Self {
        MarginalPair {
            g0: Marginal::Gaussian {
                mean: spec.mean0,
                var: spec.var0,
            },
            t0: spec.t0,
            g1: Marginal::Gaussian {
                mean: spec.mean1,
                var: spec.var1,
            },
            t1: spec.t1,
            lambda_star: spec.lambda_star,
        }
    }

    fn group(&self, g: usize) -> (Marginal, f64) {
        if g == 0 {
            (self.g0, self.t0)
        } else {
            (self.g1, self.t1)
        }
    }

    /// Population 0-1 error on one group: the mass between `c` and the
    /// group's threshold.
    pub fn group_zero_one_loss(&self, group: usize, c: f64) -> f64 {
        let (m, t) = self.group(group);
        (m.cdf(c.max(t)) - m.cdf(c.min(t))).abs()
    }

    pub fn bias(&self, c: f64) -> f64 {
        self.group_zero_one_loss(0, c) - self.group_zero_one_loss(1, c)
    }

    /// Root of the bias curve on `[t0, t1]`, by bisection. For `t0 == t1` the
    /// bias vanishes there and the common threshold is returned.
    pub fn c_fair(&self) -> f64 {
        if self.t0 == self.t1 {
            return self.t0;
        }
        let (mut lo, mut hi) = (self.t0, self.t1);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if self.bias(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// Population margin risk of `sign(x - c)` on one group, by adaptive
    /// quadrature of the loss against the density. The integration range is
    /// split at the label flip and the hinge kinks, each piece fixing the
    /// label by its midpoint so the integrand stays continuous on the piece.
    pub fn group_margin_risk(&self, group: usize, kind: MarginLossKind, c: f64) -> f64 {
        let (m, t) = self.group(group);
        let (lo, hi) = m.support();
        let mut cuts = vec![lo, hi, t, c - 1.0, c + 1.0];
        cuts.retain(|&x| x >= lo && x <= hi);
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();
        let mut total = 0.0;
        for pair in cuts.windows(2) {
            let y = if 0.5 * (pair[0] + pair[1]) - t >= 0.0 {
                1.0
            } else {
                -1.0
            };
            let f = |x: f64| kind.value(y * (x - c)) * m.pdf(x);
            total += adaptive_simpson(&f, pair[0], pair[1], 1e-11);
        }
        total
    }

    /// Mixture margin risk at weight `lambda`.
    pub fn mixture_risk(&self, lambda: f64, kind: MarginLossKind, c: f64) -> f64 {
        lambda * self.group_margin_risk(0, kind, c)
            + (1.0 - lambda) * self.group_margin_risk(1, kind, c)
    }

    /// Minimizer of the mixture margin risk, by golden-section search on the
    /// integrated risk (argument tolerance 1e-8).
    pub fn c_of_lambda(&self, kind: MarginLossKind, lambda: f64) -> f64 {
        let (lo0, hi0) = self.g0.support();
        let (lo1, hi1) = self.g1.support();
        let lo = lo0.min(lo1).min(self.t0) - 1.5;
        let hi = hi0.max(hi1).max(self.t1) + 1.5;
        let f = |c: f64| self.mixture_risk(lambda, kind, c);
        golden_min(&f, lo, hi, 1e-8).0
    }
}

/// Golden-section search for the minimum of a unimodal function. Returns
/// `(argmin, min)` once the bracket is narrower than `tol`.
pub fn golden_min(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    const INVPHI: f64 = 0.618_033_988_749_894_9;
    const INVPHI2: f64 = 1.0 - INVPHI;
    let mut c = a + INVPHI2 * (b - a);
    let mut d = a + INVPHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while b - a > tol {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = a + INVPHI2 * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INVPHI * (b - a);
            fd = f(d);
        }
    }
    let mid = 0.5 * (a + b);
    (mid, f(mid))
}

/// Adaptive Simpson quadrature with Richardson acceptance.
pub fn adaptive_simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse(
        f: &impl Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(fa, flm, fm, a, m);
        let right = simpson(fm, frm, fb, m, b);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
                + recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
        }
    }
    if a >= b {
        return 0.0;
    }
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = simpson(fa, fm, fb, a, b);
    recurse(f, a, b, fa, fm, fb, whole, tol, 48)
}

/// A [`MarginalPair`] together with the loss its minimizer map refers to.
#[derive(Debug, Clone, Copy)]
pub struct NumericTheory {
    pub pair: MarginalPair,
    pub loss: MarginLossKind,
}

impl NumericTheory {
    pub fn new(pair: MarginalPair, loss: MarginLossKind) -> Self {
        NumericTheory { pair, loss }
    }
}

impl OneDimTheory for NumericTheory {
    fn thresholds(&self) -> (f64, f64) {
        (self.pair.t0, self.pair.t1)
    }

    fn lambda_star(&self) -> f64 {
        self.pair.lambda_star
    }

    fn c_fair(&self) -> f64 {
        self.pair.c_fair()
    }

    fn c_of_lambda(&self, lambda: f64) -> f64 {
        self.pair.c_of_lambda(self.loss, lambda)
    }

    fn bias(&self, c: f64) -> f64 {
        self.pair.bias(c)
    }

    fn group_zero_one_loss(&self, group: usize, c: f64) -> f64 {
        self.pair.group_zero_one_loss(group, c)
    }
}
