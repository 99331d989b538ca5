//! Where an experiment's data comes from.

use fairsample_core::data::{
    load_csv, synth_gaussian_mixture, synth_uniform_mixture, synth_wards, CsvSchema, Dataset,
    GaussianMixtureSpec, UniformMixtureSpec, WardSpec,
};
use fairsample_core::Result;
use serde::{Deserialize, Serialize};
use std::path::PathBuf;

/// A dataset source: a CSV file with a column schema, or one of the synthetic
/// generators. Synthetic sources are materialized from the experiment's data
/// seed, so the same config always yields the same dataset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "snake_case")]
pub enum DataSource {
    Csv {
        path: PathBuf,
        schema: CsvSchema,
    },
    UniformMixture {
        spec: UniformMixtureSpec,
        n: usize,
    },
    GaussianMixture {
        spec: GaussianMixtureSpec,
        n: usize,
    },
    Wards {
        spec: WardSpec,
    },
}

impl DataSource {
    pub fn materialize(&self, seed: u64) -> Result<Dataset> {
        match self {
            DataSource::Csv { path, schema } => load_csv(path, schema),
            DataSource::UniformMixture { spec, n } => synth_uniform_mixture(spec, *n, seed),
            DataSource::GaussianMixture { spec, n } => synth_gaussian_mixture(spec, *n, seed),
            DataSource::Wards { spec } => synth_wards(spec, seed),
        }
    }
}

/// The nine-ward synthetic stand-in at full scale (22750 records): ward
/// feature clouds spread along a line with strong overlap, per-ward label
/// boundaries tied to the cloud centers, and mild noise that leaves a couple
/// of wards harder than the rest.
pub fn full_scale_wards() -> WardSpec {
    WardSpec {
        ward_sizes: vec![2548, 2697, 1489, 2998, 1477, 2945, 2732, 2970, 2894],
        feature_means: vec![-1.2, -0.9, -0.6, -0.3, 0.0, 0.3, 0.6, 0.9, 1.2],
        label_noise: vec![0.05, 0.05, 0.12, 0.05, 0.10, 0.05, 0.05, 0.05, 0.05],
        feature_std: 1.2,
        boundary_offset: 0.3,
        test_size: 5_000,
    }
}

/// [`full_scale_wards`] at one-tenth scale, for fast experiment runs.
pub fn desk_scale_wards() -> WardSpec {
    WardSpec {
        ward_sizes: vec![255, 270, 149, 300, 148, 295, 273, 297, 289],
        test_size: 500,
        ..full_scale_wards()
    }
}
