//! Observables of Wigner value distributions: moments, histograms, excess,
//! negativity, the Gaussian random-state reference and relaxation times.

pub mod distribution;
pub mod ensemble;
pub mod gaussian;
pub mod moments;
pub mod relaxation;

pub use distribution::{
    excess, negative_fraction, negative_fraction_of, value_distribution, ValueDistribution,
    DEFAULT_BINS,
};
pub use ensemble::{
    ensemble_gaussianity, ensemble_gaussianity_with_bins, ensemble_state, EnsembleSummary,
    SampleStats,
};
pub use gaussian::{kolmogorov_distance, GaussianReference};
pub use moments::Moments;
pub use relaxation::{
    first_sustained, negativity_time, relaxation_time, RelaxationSeries, DEFAULT_HOLD,
    DEFAULT_NEGATIVITY_LEVEL, DEFAULT_THRESHOLD,
};
