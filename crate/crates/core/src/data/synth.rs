//! Seeded synthetic data generators.

use super::{Dataset, GaussianMixtureSpec, Label, LabeledPoint, UniformMixtureSpec, WardSpec};
use crate::error::{Error, Result};
use crate::rng::substream;
use rand::Rng;
use rand_distr::{Distribution, Normal};

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Contract("cannot generate 0 points".into()));
    }
    Ok(())
}

/// Draw `n` i.i.d. points from a two-group uniform mixture: group 0 with
/// probability `lambda_star`, then `x ~ U(alpha_a, beta_a)` and
/// `y = sign(x - t_a)`.
pub fn synth_uniform_mixture(spec: &UniformMixtureSpec, n: usize, seed: u64) -> Result<Dataset> {
    spec.validate()?;
    check_n(n)?;
    let mut rng = substream(seed, "synth-uniform");
    let mut points = Vec::with_capacity(n);
    for _ in 0..n {
        let group0 = rng.random::<f64>() < spec.lambda_star;
        let (lo, hi, t) = if group0 {
            (spec.alpha0, spec.beta0, spec.t0)
        } else {
            (spec.alpha1, spec.beta1, spec.t1)
        };
        let x = rng.random_range(lo..hi);
        points.push(LabeledPoint::new(
            vec![x],
            Label::from_sign(x - t),
            usize::from(!group0),
        ));
    }
    Dataset::with_group_count(points, 2)
}

/// Draw `n` i.i.d. points from a two-group Gaussian mixture. The spec's
/// variances are variances, not standard deviations.
pub fn synth_gaussian_mixture(spec: &GaussianMixtureSpec, n: usize, seed: u64) -> Result<Dataset> {
    spec.validate()?;
    check_n(n)?;
    let normal0 = Normal::new(spec.mean0, spec.var0.sqrt())
        .map_err(|e| Error::InvalidSpec(e.to_string()))?;
    let normal1 = Normal::new(spec.mean1, spec.var1.sqrt())
        .map_err(|e| Error::InvalidSpec(e.to_string()))?;
    let mut rng = substream(seed, "synth-gaussian");
    let mut points = Vec::with_capacity(n);
    for _ in 0..n {
        let group0 = rng.random::<f64>() < spec.lambda_star;
        let (x, t) = if group0 {
            (normal0.sample(&mut rng), spec.t0)
        } else {
            (normal1.sample(&mut rng), spec.t1)
        };
        points.push(LabeledPoint::new(
            vec![x],
            Label::from_sign(x - t),
            usize::from(!group0),
        ));
    }
    Dataset::with_group_count(points, 2)
}

/// Generate multi-ward data with exact per-ward sizes. Each ward `w` draws
/// `x ~ N(mean_w, std^2)`, labels with `y = sign(x - (mean_w + offset))`, and
/// flips each label with the ward's noise rate. Timestamps emulate a biased
/// historical collection: wards are visited roughly one after another, with a
/// small amount of interleaving at the seams.
pub fn synth_wards(spec: &WardSpec, seed: u64) -> Result<Dataset> {
    spec.validate()?;
    let mut rng = substream(seed, "synth-wards");
    let total = spec.total_size();
    let mut points = Vec::with_capacity(total);
    // sort key per point: ward index plus jitter, so the "history" mostly
    // walks the wards in order
    let mut order_keys = Vec::with_capacity(total);
    for (ward, &size) in spec.ward_sizes.iter().enumerate() {
        let normal = Normal::new(spec.feature_means[ward], spec.feature_std)
            .map_err(|e| Error::InvalidSpec(e.to_string()))?;
        let boundary = spec.feature_means[ward] + spec.boundary_offset;
        let noise = spec.label_noise[ward];
        for _ in 0..size {
            let x = normal.sample(&mut rng);
            let mut y = Label::from_sign(x - boundary);
            if noise > 0.0 && rng.random::<f64>() < noise {
                y = match y {
                    Label::Pos => Label::Neg,
                    Label::Neg => Label::Pos,
                };
            }
            points.push(LabeledPoint::new(vec![x], y, ward));
            order_keys.push(ward as f64 + 0.5 * rng.random::<f64>());
        }
    }
    // timestamp = rank in the jittered ward ordering
    let mut by_key: Vec<usize> = (0..total).collect();
    by_key.sort_by(|&i, &j| order_keys[i].total_cmp(&order_keys[j]));
    let mut timestamps = vec![0u64; total];
    for (rank, &idx) in by_key.iter().enumerate() {
        timestamps[idx] = rank as u64;
    }
    Dataset::with_group_count(points, spec.ward_sizes.len())?.with_timestamps(timestamps)
}
