//! Core data containers, deterministic splitting, CSV ingestion, and synthetic
//! generators.
//!
//! All types are immutable after construction and safe to share read-only
//! across parallel workers. Generators take an explicit seed and are otherwise
//! stateless.

mod csv_io;
mod synth;

pub use csv_io::{load_csv, CsvSchema, LabelMap};
pub use synth::{synth_gaussian_mixture, synth_uniform_mixture, synth_wards};

use crate::error::{Error, Result};
use crate::rng::substream;
use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

/// Binary label, encoded as -1/+1 in all numeric formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    Neg,
    Pos,
}

impl Label {
    /// `sign(v)` with the convention `sign(0) = +1`.
    pub fn from_sign(v: f64) -> Self {
        if v >= 0.0 {
            Label::Pos
        } else {
            Label::Neg
        }
    }

    pub fn signum(self) -> f64 {
        match self {
            Label::Pos => 1.0,
            Label::Neg => -1.0,
        }
    }
}

/// One observation: features, binary label, and group membership.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledPoint {
    pub x: Vec<f64>,
    pub y: Label,
    pub a: usize,
}

impl LabeledPoint {
    pub fn new(x: Vec<f64>, y: Label, a: usize) -> Self {
        LabeledPoint { x, y, a }
    }

    /// The single feature of a 1-D point.
    pub fn x1(&self) -> f64 {
        self.x[0]
    }
}

/// An ordered collection of points sharing a feature dimension and a group
/// universe. Optional integer-rank timestamps support replay orderings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    points: Vec<LabeledPoint>,
    group_count: usize,
    dim: usize,
    timestamps: Option<Vec<u64>>,
}

impl Dataset {
    /// Build a dataset, inferring `group_count = 1 + max a`.
    pub fn new(points: Vec<LabeledPoint>) -> Result<Self> {
        let group_count = points.iter().map(|p| p.a + 1).max().unwrap_or(0);
        Self::with_group_count(points, group_count)
    }

    /// Build a dataset with an explicit group universe (it may exceed the
    /// groups actually present, e.g. in a subset of a larger dataset).
    pub fn with_group_count(points: Vec<LabeledPoint>, group_count: usize) -> Result<Self> {
        let dim = points.first().map(|p| p.x.len()).unwrap_or(0);
        for (i, p) in points.iter().enumerate() {
            if p.x.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: p.x.len(),
                });
            }
            if p.a >= group_count {
                return Err(Error::Contract(format!(
                    "point {i} has group {} but group_count is {group_count}",
                    p.a
                )));
            }
        }
        Ok(Dataset {
            points,
            group_count,
            dim,
            timestamps: None,
        })
    }

    /// Attach per-point integer-rank timestamps.
    pub fn with_timestamps(mut self, timestamps: Vec<u64>) -> Result<Self> {
        if timestamps.len() != self.points.len() {
            return Err(Error::Contract(format!(
                "{} timestamps for {} points",
                timestamps.len(),
                self.points.len()
            )));
        }
        self.timestamps = Some(timestamps);
        Ok(self)
    }

    pub fn points(&self) -> &[LabeledPoint] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &LabeledPoint {
        &self.points[i]
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn group_count(&self) -> usize {
        self.group_count
    }

    pub fn timestamps(&self) -> Option<&[u64]> {
        self.timestamps.as_deref()
    }

    /// Indices of the points belonging to group `a`.
    pub fn group_indices(&self, a: usize) -> Vec<usize> {
        self.points
            .iter()
            .enumerate()
            .filter(|(_, p)| p.a == a)
            .map(|(i, _)| i)
            .collect()
    }

    /// Number of points in group `a`.
    pub fn group_size(&self, a: usize) -> usize {
        self.points.iter().filter(|p| p.a == a).count()
    }

    /// New dataset from the given indices, preserving the source dimension,
    /// group universe, and timestamps.
    pub fn subset(&self, indices: &[usize]) -> Dataset {
        let points = indices.iter().map(|&i| self.points[i].clone()).collect();
        let timestamps = self
            .timestamps
            .as_ref()
            .map(|ts| indices.iter().map(|&i| ts[i]).collect());
        Dataset {
            points,
            group_count: self.group_count,
            dim: self.dim,
            timestamps,
        }
    }

    /// Append one point (used by growing training sets).
    pub fn push(&mut self, p: LabeledPoint) -> Result<()> {
        if self.points.is_empty() {
            self.dim = p.x.len();
        } else if p.x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: p.x.len(),
            });
        }
        if p.a >= self.group_count {
            self.group_count = p.a + 1;
        }
        if let Some(ts) = &mut self.timestamps {
            ts.push(ts.len() as u64);
        }
        self.points.push(p);
        Ok(())
    }
}

/// Requested part sizes for [`split`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitSizes {
    pub train: usize,
    pub pool: usize,
    pub validation: usize,
    pub test: usize,
}

impl SplitSizes {
    pub fn total(&self) -> usize {
        self.train + self.pool + self.validation + self.test
    }
}

/// Disjoint train/pool/validation/test parts of one source dataset.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DataSplit {
    pub train: Dataset,
    pub pool: Dataset,
    pub validation: Dataset,
    pub test: Dataset,
}

/// Deterministically partition `data` into four disjoint parts of the given
/// sizes. Leftover points are discarded, which keeps size sweeps cheap.
pub fn split(data: &Dataset, sizes: SplitSizes, seed: u64) -> Result<DataSplit> {
    if sizes.total() > data.len() {
        return Err(Error::Contract(format!(
            "split sizes sum to {} but dataset has {} points",
            sizes.total(),
            data.len()
        )));
    }
    let mut indices: Vec<usize> = (0..data.len()).collect();
    let mut rng = substream(seed, "split");
    indices.shuffle(&mut rng);

    let take = |n: usize, offset: &mut usize| {
        let part = &indices[*offset..*offset + n];
        *offset += n;
        data.subset(part)
    };
    let mut offset = 0;
    let train = take(sizes.train, &mut offset);
    let pool = take(sizes.pool, &mut offset);
    let validation = take(sizes.validation, &mut offset);
    let test = take(sizes.test, &mut offset);
    Ok(DataSplit {
        train,
        pool,
        validation,
        test,
    })
}

/// Split off a fixed holdout of size `n` (e.g. a test set shared across many
/// experiment seeds); returns `(rest, holdout)`.
pub fn carve_holdout(data: &Dataset, n: usize, seed: u64) -> Result<(Dataset, Dataset)> {
    if n > data.len() {
        return Err(Error::Contract(format!(
            "holdout of {n} from {} points",
            data.len()
        )));
    }
    let mut indices: Vec<usize> = (0..data.len()).collect();
    let mut rng = substream(seed, "holdout");
    indices.shuffle(&mut rng);
    let holdout = data.subset(&indices[..n]);
    let rest = data.subset(&indices[n..]);
    Ok((rest, holdout))
}

/// Parameters of a two-group mixture of uniform marginals with threshold
/// labels. The margins of width one around every interval edge and threshold
/// must be strictly ordered for the closed-form risk analysis to apply.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UniformMixtureSpec {
    pub alpha0: f64,
    pub beta0: f64,
    pub t0: f64,
    pub alpha1: f64,
    pub beta1: f64,
    pub t1: f64,
    pub lambda_star: f64,
}

impl UniformMixtureSpec {
    pub fn new(
        alpha0: f64,
        beta0: f64,
        t0: f64,
        alpha1: f64,
        beta1: f64,
        t1: f64,
        lambda_star: f64,
    ) -> Result<Self> {
        let spec = UniformMixtureSpec {
            alpha0,
            beta0,
            t0,
            alpha1,
            beta1,
            t1,
            lambda_star,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let chain = [
            self.alpha0 + 1.0,
            self.alpha1 + 1.0,
            self.t0 - 1.0,
            self.t0 + 1.0,
            self.t1 - 1.0,
            self.t1 + 1.0,
            self.beta0 - 1.0,
            self.beta1 - 1.0,
        ];
        if !chain.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::InvalidSpec(format!(
                "interval ordering violated: {chain:?} must be strictly increasing"
            )));
        }
        if !(self.lambda_star > 0.0 && self.lambda_star < 1.0) {
            return Err(Error::InvalidSpec(format!(
                "lambda_star must lie in (0,1), got {}",
                self.lambda_star
            )));
        }
        Ok(())
    }

    /// Density of the group-0 marginal.
    pub fn w0(&self) -> f64 {
        1.0 / (self.beta0 - self.alpha0)
    }

    /// Density of the group-1 marginal.
    pub fn w1(&self) -> f64 {
        1.0 / (self.beta1 - self.alpha1)
    }
}

/// Two-group mixture of Gaussian marginals with threshold labels. The second
/// parameter of each component is a variance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianMixtureSpec {
    pub mean0: f64,
    pub var0: f64,
    pub t0: f64,
    pub mean1: f64,
    pub var1: f64,
    pub t1: f64,
    pub lambda_star: f64,
}

impl GaussianMixtureSpec {
    pub fn new(
        mean0: f64,
        var0: f64,
        t0: f64,
        mean1: f64,
        var1: f64,
        t1: f64,
        lambda_star: f64,
    ) -> Result<Self> {
        let spec = GaussianMixtureSpec {
            mean0,
            var0,
            t0,
            mean1,
            var1,
            t1,
            lambda_star,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.var0 <= 0.0 || self.var1 <= 0.0 {
            return Err(Error::InvalidSpec("variances must be positive".into()));
        }
        if self.t0 >= self.t1 {
            return Err(Error::InvalidSpec(format!(
                "need t0 < t1, got t0={} t1={}",
                self.t0, self.t1
            )));
        }
        if !(self.lambda_star > 0.0 && self.lambda_star < 1.0) {
            return Err(Error::InvalidSpec(format!(
                "lambda_star must lie in (0,1), got {}",
                self.lambda_star
            )));
        }
        Ok(())
    }
}

/// Synthetic multi-ward data: one Gaussian feature cloud per ward, labels set
/// by a per-ward threshold (`feature mean + boundary_offset`) and flipped with
/// a per-ward noise rate. `test_size` records how large a holdout downstream
/// experiments should carve from the generated data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WardSpec {
    pub ward_sizes: Vec<usize>,
    pub feature_means: Vec<f64>,
    pub label_noise: Vec<f64>,
    pub feature_std: f64,
    pub boundary_offset: f64,
    pub test_size: usize,
}

impl WardSpec {
    pub fn validate(&self) -> Result<()> {
        if self.ward_sizes.len() < 2 {
            return Err(Error::InvalidSpec("need at least 2 wards".into()));
        }
        if self.ward_sizes.contains(&0) {
            return Err(Error::InvalidSpec("all ward sizes must be positive".into()));
        }
        if self.feature_means.len() != self.ward_sizes.len()
            || self.label_noise.len() != self.ward_sizes.len()
        {
            return Err(Error::InvalidSpec(
                "per-ward parameter lists must match the number of wards".into(),
            ));
        }
        if self.label_noise.iter().any(|&r| !(0.0..0.5).contains(&r)) {
            return Err(Error::InvalidSpec("label noise must lie in [0, 0.5)".into()));
        }
        if self.feature_std <= 0.0 {
            return Err(Error::InvalidSpec("feature_std must be positive".into()));
        }
        Ok(())
    }

    pub fn total_size(&self) -> usize {
        self.ward_sizes.iter().sum()
    }
}
