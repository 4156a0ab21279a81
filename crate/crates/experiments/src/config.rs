//! Experiment descriptions. These are serialized verbatim into the manifest,
//! so a run can be repeated from its manifest alone.

use serde::{Deserialize, Serialize};

use crate::error::{ExperimentError, Result};

pub const DEFAULT_KICK: f64 = 0.5;
pub const DEFAULT_DIM: usize = 2187;
pub const DEFAULT_T_MAX_FACTOR: f64 = 6.0;
pub const DEFAULT_LEVEL: f64 = 0.45;
pub const DEFAULT_THRESHOLD: f64 = 0.5;
pub const DEFAULT_HOLD: usize = 2;
pub const DEFAULT_BINS: usize = 101;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum InitialState {
    Coherent { q0: f64, p0: f64 },
    Random { seed: u64 },
    Position { n0: i64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SnapshotsConfig {
    pub kick: f64,
    pub dim: usize,
    pub q0: f64,
    pub p0: f64,
    pub times: Vec<usize>,
    pub bins: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExcessNConfig {
    pub kick: f64,
    pub dims: Vec<usize>,
    pub t_max_factor: f64,
    pub q0: f64,
    pub p0: f64,
    pub threshold: f64,
    pub hold: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExcessKConfig {
    pub kicks: Vec<f64>,
    pub dim: usize,
    pub t_max: usize,
    pub q0: f64,
    pub p0: f64,
    pub threshold: f64,
    pub hold: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NegativityConfig {
    pub kick: f64,
    pub dims: Vec<usize>,
    pub t_max_factor: f64,
    pub q0: f64,
    pub p0: f64,
    /// P- level defining t_c.
    pub level: f64,
    /// |excess| threshold defining t_r, reported alongside t_c.
    pub threshold: f64,
    pub hold: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleConfig {
    pub dim: usize,
    pub samples: usize,
    pub seed: u64,
    pub bins: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WignerConfig {
    pub dim: usize,
    pub state: InitialState,
    /// Optional evolution before the dump.
    pub kick: f64,
    pub steps: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "experiment", rename_all = "kebab-case")]
pub enum Experiment {
    Snapshots(SnapshotsConfig),
    ExcessN(ExcessNConfig),
    ExcessK(ExcessKConfig),
    Negativity(NegativityConfig),
    Ensemble(EnsembleConfig),
    Wigner(WignerConfig),
}

impl Experiment {
    pub fn id(&self) -> &'static str {
        match self {
            Experiment::Snapshots(_) => "snapshots",
            Experiment::ExcessN(_) => "excess-n",
            Experiment::ExcessK(_) => "excess-k",
            Experiment::Negativity(_) => "negativity",
            Experiment::Ensemble(_) => "ensemble",
            Experiment::Wigner(_) => "wigner",
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Experiment::Snapshots(c) => {
                check_dim(c.dim)?;
                check_kick(c.kick)?;
                check_center(c.dim, c.q0, c.p0)?;
                check_bins(c.bins)?;
                if c.times.is_empty() {
                    return invalid("snapshot time list is empty");
                }
            }
            Experiment::ExcessN(c) => {
                check_dims(&c.dims)?;
                check_kick(c.kick)?;
                check_factor(c.t_max_factor)?;
                for &d in &c.dims {
                    check_center(d, c.q0, c.p0)?;
                }
                check_estimator(c.threshold, c.hold)?;
            }
            Experiment::ExcessK(c) => {
                check_dim(c.dim)?;
                if c.kicks.is_empty() {
                    return invalid("kick list is empty");
                }
                for &k in &c.kicks {
                    check_kick(k)?;
                    if k <= 0.0 {
                        return invalid(format!(
                            "excess-k needs K > 0 for the Lyapunov exponent, got {k}"
                        ));
                    }
                }
                check_center(c.dim, c.q0, c.p0)?;
                check_estimator(c.threshold, c.hold)?;
            }
            Experiment::Negativity(c) => {
                check_dims(&c.dims)?;
                check_kick(c.kick)?;
                check_factor(c.t_max_factor)?;
                for &d in &c.dims {
                    check_center(d, c.q0, c.p0)?;
                }
                check_estimator(c.threshold, c.hold)?;
                if !(c.level > 0.0 && c.level <= 1.0) {
                    return invalid(format!(
                        "negativity level must lie in (0, 1], got {}",
                        c.level
                    ));
                }
            }
            Experiment::Ensemble(c) => {
                check_dim(c.dim)?;
                check_bins(c.bins)?;
                if c.samples == 0 {
                    return invalid("ensemble needs at least one sample");
                }
            }
            Experiment::Wigner(c) => {
                check_dim(c.dim)?;
                check_kick(c.kick)?;
                let h = (c.dim as i64 - 1) / 2;
                match c.state {
                    InitialState::Coherent { q0, p0 } => check_center(c.dim, q0, p0)?,
                    InitialState::Position { n0 } if n0.abs() > h => {
                        return invalid(format!("position index {n0} outside [-{h}, {h}]"))
                    }
                    _ => {}
                }
            }
        }
        Ok(())
    }
}

/// Integer map times 0..=ceil(factor * ln N).
pub fn time_horizon(dim: usize, factor: f64) -> usize {
    (factor * (dim as f64).ln()).ceil() as usize
}

/// Snapshot ladder {0, 1, 2, 4, 8, ceil(4 ln N)}.
pub fn default_snapshot_times(dim: usize) -> Vec<usize> {
    let mut t = vec![0, 1, 2, 4, 8, time_horizon(dim, 4.0)];
    t.sort_unstable();
    t.dedup();
    t
}

fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(ExperimentError::Validation(msg.into()))
}

fn check_dim(dim: usize) -> Result<()> {
    if dim % 2 == 0 {
        return invalid(format!("N must be odd, got {dim}"));
    }
    if dim < 3 {
        return invalid(format!("N must be at least 3, got {dim}"));
    }
    Ok(())
}

fn check_dims(dims: &[usize]) -> Result<()> {
    if dims.is_empty() {
        return invalid("N list is empty");
    }
    dims.iter().try_for_each(|&d| check_dim(d))
}

fn check_kick(kick: f64) -> Result<()> {
    if kick.is_finite() {
        Ok(())
    } else {
        invalid(format!("K must be finite, got {kick}"))
    }
}

fn check_factor(f: f64) -> Result<()> {
    if f.is_finite() && f >= 0.0 {
        Ok(())
    } else {
        invalid(format!(
            "t-max factor must be a non-negative number, got {f}"
        ))
    }
}

fn check_bins(bins: usize) -> Result<()> {
    if bins >= 2 {
        Ok(())
    } else {
        invalid(format!("bin count must be >= 2, got {bins}"))
    }
}

fn check_estimator(threshold: f64, hold: usize) -> Result<()> {
    if !(threshold > 0.0) {
        return invalid(format!("threshold must be > 0, got {threshold}"));
    }
    if hold == 0 {
        return invalid("hold must be >= 1");
    }
    Ok(())
}

fn check_center(dim: usize, q0: f64, p0: f64) -> Result<()> {
    let h = (dim as f64 - 1.0) / 2.0;
    if q0.abs() <= h && p0.abs() <= h {
        Ok(())
    } else {
        invalid(format!(
            "packet centre ({q0}, {p0}) outside [-{h}, {h}] for N={dim}"
        ))
    }
}
