//! Seeded, manifest-recorded experiment runs over `torus-wigner`: value
//! distribution snapshots, excess relaxation against N and K, negativity,
//! random-state ensembles and raw grid dumps.

pub mod config;
pub mod error;
pub mod manifest;
pub mod output;
pub mod plot;
pub mod runs;

pub use config::{Experiment, InitialState};
pub use error::{ExperimentError, Result};
pub use manifest::RunManifest;
pub use runs::{execute, rerun, Report, RunOptions, RunRecord};
