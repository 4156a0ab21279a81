use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::config::{Experiment, InitialState};
use crate::error::Result;

pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellParams {
    pub kick: f64,
    pub dim: usize,
    /// T = 2 pi / N.
    pub period: f64,
    /// false when K <= 0 (classical map not ergodic).
    pub ergodic: bool,
    pub times: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Estimators {
    pub relaxation_threshold: Option<f64>,
    pub negativity_level: Option<f64>,
    pub hold: Option<usize>,
    /// |W| at or below this counts as zero when computing P-.
    pub zero_floor: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Conventions {
    pub index_range: String,
    pub momentum_transform: String,
    pub coherent_state: String,
    pub scaled_time: String,
    pub histogram: String,
}

impl Default for Conventions {
    fn default() -> Self {
        Self {
            index_range: "n, m, k in {-(N-1)/2, ..., (N-1)/2}".into(),
            momentum_transform: "phi_k = N^{-1/2} sum_n exp(-2 pi i k n / N) psi_n; kick applied before the kinetic phase".into(),
            coherent_state: "periodized Gaussian exp(-(pi/N) x^2 + 2 pi i p0 x / N), x = n + jN - q0, |j| <= 3, renormalized".into(),
            scaled_time: "t / ln N; excess-k also lambda(K) t / ln N".into(),
            histogram: "uniform bins on [min W, max W], density = count / (N^2 width); moments from raw values".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub experiment_id: String,
    pub config: Experiment,
    pub initial_state: Option<InitialState>,
    pub cells: Vec<CellParams>,
    pub bins: Option<usize>,
    pub estimators: Estimators,
    pub rng: String,
    pub scalar: String,
    pub conventions: Conventions,
    pub software_version: String,
    pub threads: usize,
    pub emit_plot_script: bool,
    pub wall_clock_seconds: f64,
    pub files: Vec<String>,
}

impl RunManifest {
    pub fn write(&self, dir: &Path) -> Result<()> {
        fs::write(
            dir.join(MANIFEST_FILE),
            serde_json::to_string_pretty(self)? + "\n",
        )?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<Self> {
        Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
    }
}
