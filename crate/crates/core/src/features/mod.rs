//! Label-invariant graph summaries used as classifier inputs.
//!
//! A feature vector is the 3-profile (H0..H3), the 4-profile (F0..F10) and,
//! in [`FeatureMode::Full`], the five-bin normalized Laplacian histogram
//! (B1..B5). Values are raw counts; scaling happens in `learn`.

mod profile;
mod spectrum;

pub use profile::{
    classify_motif4, motif4_table, profile3, profile4, profile4_oracle, Profile3, Profile4, MOTIF3_NAMES,
    MOTIF4_COMPLEMENT, MOTIF4_EDGES, MOTIF4_NAMES, ORACLE_MAX_NODES,
};
pub use spectrum::{
    laplacian_spectrum, normalized_laplacian, spectral_histogram, SpectralHistogram, BIN_EDGES, RESIDUAL_TOLERANCE,
    SPECTRUM_TOLERANCE,
};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const HISTOGRAM_NAMES: [&str; 5] = ["B1", "B2", "B3", "B4", "B5"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FeatureMode {
    /// Profiles and spectral histogram, 20 values.
    Full,
    /// Profiles only, 15 values.
    Profiles,
}

impl FeatureMode {
    pub fn dim(self) -> usize {
        match self {
            FeatureMode::Full => 20,
            FeatureMode::Profiles => 15,
        }
    }

    /// Column names in vector order.
    pub fn names(self) -> Vec<&'static str> {
        let mut names: Vec<&str> = MOTIF3_NAMES.iter().chain(&MOTIF4_NAMES).copied().collect();
        if self == FeatureMode::Full {
            names.extend(HISTOGRAM_NAMES);
        }
        names
    }
}

impl fmt::Display for FeatureMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FeatureMode::Full => "full",
            FeatureMode::Profiles => "profiles",
        })
    }
}

impl FromStr for FeatureMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(FeatureMode::Full),
            "profiles" | "profiles_only" => Ok(FeatureMode::Profiles),
            other => Err(Error::InvalidParameter(format!("unknown feature mode `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVector {
    mode: FeatureMode,
    values: Vec<f64>,
}

impl FeatureVector {
    pub fn mode(&self) -> FeatureMode {
        self.mode
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }
}

/// Features of the unweighted topology of `g`.
pub fn feature_vector(g: &Graph, mode: FeatureMode) -> Result<FeatureVector> {
    let n = g.node_count();
    if n < 4 {
        return Err(Error::GraphTooSmall { required: 4, actual: n });
    }
    let topology = g.unweighted();
    let mut values: Vec<f64> = profile3(&topology)?.0.iter().map(|&c| c as f64).collect();
    values.extend(profile4(&topology)?.0.iter().map(|&c| c as f64));
    if mode == FeatureMode::Full {
        let hist = spectral_histogram(&laplacian_spectrum(&topology)?)?;
        values.extend(hist.0.iter().map(|&c| c as f64));
    }
    debug_assert_eq!(values.len(), mode.dim());
    Ok(FeatureVector { mode, values })
}
