//! Closed forms for uniform marginals under hinge loss.
//!
//! With group-`j` features uniform on `[alpha_j, beta_j]`, density
//! `w_j = 1/(beta_j - alpha_j)`, and the interval-ordering chain of
//! [`UniformMixtureSpec`] in force, every quantity of interest is piecewise
//! polynomial in the threshold `c`: the per-group 0-1 errors (4 linear
//! pieces), the bias curve (7 linear pieces), and the mixture hinge risk
//! (9 quadratic pieces). The risk minimizer is one of three parabola vertices
//! selected by the signs of two affine functions of `lambda`.

use super::OneDimTheory;
use crate::data::UniformMixtureSpec;

/// Population 0-1 error of `sign(x - c)` on group `j` (0 or 1).
pub fn group_zero_one_loss(spec: &UniformMixtureSpec, group: usize, c: f64) -> f64 {
    let (alpha, beta, t, w) = match group {
        0 => (spec.alpha0, spec.beta0, spec.t0, spec.w0()),
        _ => (spec.alpha1, spec.beta1, spec.t1, spec.w1()),
    };
    if c <= alpha {
        (t - alpha) * w
    } else if c <= t {
        (t - c) * w
    } else if c <= beta {
        (c - t) * w
    } else {
        (beta - t) * w
    }
}

/// Group-0 error minus group-1 error of `sign(x - c)`, evaluated by its
/// 7-case piecewise formula.
pub fn bias(spec: &UniformMixtureSpec, c: f64) -> f64 {
    let (w0, w1) = (spec.w0(), spec.w1());
    let (a0, a1, t0, t1, b0, b1) = (
        spec.alpha0,
        spec.alpha1,
        spec.t0,
        spec.t1,
        spec.beta0,
        spec.beta1,
    );
    if c <= a0 {
        (t0 - a0) * w0 - (t1 - a1) * w1
    } else if c <= a1 {
        (t0 - c) * w0 - (t1 - a1) * w1
    } else if c <= t0 {
        (t0 - c) * w0 - (t1 - c) * w1
    } else if c <= t1 {
        (c - t0) * w0 - (t1 - c) * w1
    } else if c <= b0 {
        (c - t0) * w0 - (c - t1) * w1
    } else if c <= b1 {
        (b0 - t0) * w0 - (c - t1) * w1
    } else {
        (b0 - t0) * w0 - (b1 - t1) * w1
    }
}

/// The unique root of the bias curve: `(w0 t0 + w1 t1) / (w0 + w1)`.
pub fn c_fair(spec: &UniformMixtureSpec) -> f64 {
    let (w0, w1) = (spec.w0(), spec.w1());
    (w0 * spec.t0 + w1 * spec.t1) / (w0 + w1)
}

/// One quadratic piece `a c^2 + b c + k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quad {
    pub a: f64,
    pub b: f64,
    pub k: f64,
}

impl Quad {
    pub fn value(&self, c: f64) -> f64 {
        (self.a * c + self.b) * c + self.k
    }

    fn combine(lambda: f64, g0: &Quad, g1: &Quad) -> Quad {
        let l1 = 1.0 - lambda;
        Quad {
            a: lambda * g0.a + l1 * g1.a,
            b: lambda * g0.b + l1 * g1.b,
            k: lambda * g0.k + l1 * g1.k,
        }
    }
}

/// Quadratic pieces of the per-group population hinge risk, in order of the
/// group's breakpoints `alpha+1, t-1, t+1, beta-1`.
fn group_hinge_pieces(alpha: f64, beta: f64, t: f64, w: f64) -> [Quad; 5] {
    [
        Quad {
            a: 0.0,
            b: -w * (t - alpha),
            k: w * (t - alpha) + 0.5 * w * (t * t - alpha * alpha),
        },
        Quad {
            a: 0.5 * w,
            b: -(t * w + w),
            k: 0.5 * t * t * w + t * w + 0.5 * w,
        },
        Quad {
            a: w,
            b: -2.0 * t * w,
            k: t * t * w + w,
        },
        Quad {
            a: 0.5 * w,
            b: -(t * w - w),
            k: 0.5 * t * t * w - t * w + 0.5 * w,
        },
        Quad {
            a: 0.0,
            b: (beta - t) * w,
            k: 0.5 * t * t * w - t * w - 0.5 * beta * beta * w + beta * w,
        },
    ]
}

// Which per-group piece is active on each of the nine mixture intervals.
const G0_PIECE: [usize; 9] = [0, 1, 1, 2, 3, 3, 3, 4, 4];
const G1_PIECE: [usize; 9] = [0, 0, 1, 1, 1, 2, 3, 3, 4];

/// The mixture population hinge risk `c -> E(c)` at a fixed weight `lambda`,
/// as nine explicit quadratic pieces.
#[derive(Debug, Clone)]
pub struct RiskCurve {
    lambda: f64,
    breakpoints: [f64; 8],
    pieces: [Quad; 9],
}

impl RiskCurve {
    pub fn new(spec: &UniformMixtureSpec, lambda: f64) -> Self {
        let g0 = group_hinge_pieces(spec.alpha0, spec.beta0, spec.t0, spec.w0());
        let g1 = group_hinge_pieces(spec.alpha1, spec.beta1, spec.t1, spec.w1());
        let breakpoints = [
            spec.alpha0 + 1.0,
            spec.alpha1 + 1.0,
            spec.t0 - 1.0,
            spec.t0 + 1.0,
            spec.t1 - 1.0,
            spec.t1 + 1.0,
            spec.beta0 - 1.0,
            spec.beta1 - 1.0,
        ];
        let pieces = std::array::from_fn(|i| {
            Quad::combine(lambda, &g0[G0_PIECE[i]], &g1[G1_PIECE[i]])
        });
        RiskCurve {
            lambda,
            breakpoints,
            pieces,
        }
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn breakpoints(&self) -> &[f64; 8] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[Quad; 9] {
        &self.pieces
    }

    /// Evaluate the risk; breakpoint cases resolve in listed order.
    pub fn value(&self, c: f64) -> f64 {
        let mut idx = 8;
        for (i, &b) in self.breakpoints.iter().enumerate() {
            if c <= b {
                idx = i;
                break;
            }
        }
        self.pieces[idx].value(c)
    }
}

/// Mixture population hinge risk of `sign(x - c)` at weight `lambda`.
pub fn hinge_risk(spec: &UniformMixtureSpec, lambda: f64, c: f64) -> f64 {
    RiskCurve::new(spec, lambda).value(c)
}

/// Vertices of the parabolas the risk follows on the three middle intervals
/// `[t0-1, t0+1]`, `[t0+1, t1-1]`, `[t1-1, t1+1]`.
pub fn vertices(spec: &UniformMixtureSpec, lambda: f64) -> (f64, f64, f64) {
    let (w0, w1) = (spec.w0(), spec.w1());
    let (t0, t1) = (spec.t0, spec.t1);
    let l1 = 1.0 - lambda;
    let s3 = (lambda * 2.0 * t0 * w0 + l1 * w1 * (t1 + 1.0)) / (2.0 * lambda * w0 + l1 * w1);
    let s4 = (lambda * w0 * (t0 - 1.0) + l1 * w1 * (t1 + 1.0)) / (lambda * w0 + l1 * w1);
    let s5 = (lambda * w0 * (t0 - 1.0) + l1 * 2.0 * t1 * w1) / (lambda * w0 + 2.0 * l1 * w1);
    (s3, s4, s5)
}

/// Nonpositive iff the minimizer sits on `[t0, t0+1]` (left vertex case).
pub fn phi(spec: &UniformMixtureSpec, lambda: f64) -> f64 {
    let (w0, w1) = (spec.w0(), spec.w1());
    let d = spec.t1 - spec.t0;
    -lambda * (w1 * d + 2.0 * w0) + w1 * d
}

/// Nonpositive iff the minimizer sits on `[t1-1, t1]` (right vertex case).
pub fn psi(spec: &UniformMixtureSpec, lambda: f64) -> f64 {
    let (w0, w1) = (spec.w0(), spec.w1());
    let d = spec.t1 - spec.t0;
    lambda * (w0 * d + 2.0 * w1) - 2.0 * w1
}

/// The unique minimizer of the mixture hinge risk, in `[t0, t1]`.
pub fn c_of_lambda(spec: &UniformMixtureSpec, lambda: f64) -> f64 {
    if lambda == 0.0 {
        return spec.t1;
    }
    if lambda == 1.0 {
        return spec.t0;
    }
    let (s3, s4, s5) = vertices(spec, lambda);
    if phi(spec, lambda) <= 0.0 {
        s3
    } else if psi(spec, lambda) <= 0.0 {
        s5
    } else {
        s4
    }
}

/// Preimage of `c_fair` under the minimizer map; see
/// [`super::lambda_fair_interval`].
pub fn lambda_fair_interval(spec: &UniformMixtureSpec) -> (f64, f64) {
    super::lambda_fair_interval(&ExactUniform::new(*spec))
}

/// Closed-form engine for a validated uniform-marginal spec under hinge loss.
#[derive(Debug, Clone, Copy)]
pub struct ExactUniform {
    spec: UniformMixtureSpec,
}

impl ExactUniform {
    pub fn new(spec: UniformMixtureSpec) -> Self {
        ExactUniform { spec }
    }

    pub fn spec(&self) -> &UniformMixtureSpec {
        &self.spec
    }
}

impl OneDimTheory for ExactUniform {
    fn thresholds(&self) -> (f64, f64) {
        (self.spec.t0, self.spec.t1)
    }

    fn lambda_star(&self) -> f64 {
        self.spec.lambda_star
    }

    fn c_fair(&self) -> f64 {
        c_fair(&self.spec)
    }

    fn c_of_lambda(&self, lambda: f64) -> f64 {
        c_of_lambda(&self.spec, lambda)
    }

    fn bias(&self, c: f64) -> f64 {
        bias(&self.spec, c)
    }

    fn group_zero_one_loss(&self, group: usize, c: f64) -> f64 {
        group_zero_one_loss(&self.spec, group, c)
    }
}
