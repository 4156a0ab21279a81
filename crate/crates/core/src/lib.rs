//! Discrete Wigner functions on the quantized torus and the statistics of
//! their values under the quantized sawtooth map.
//!
//! The numeric core is generic over [`Real`] (`f32` or `f64`); the aliases
//! below fix the scalar to `f64`, which is what every tolerance in the test
//! suite refers to.
//!
//! ```
//! use torus_wigner::{State, wigner_fast};
//!
//! let psi = State::coherent(27, 0.0, 0.0).unwrap();
//! let grid = wigner_fast(&psi).unwrap();
//! assert!((grid.mean() - 1.0 / 26f64.sqrt()).abs() < 1e-10);
//! assert!((grid.variance() - 1.0).abs() < 1e-9);
//! ```

pub mod error;
pub mod fft;
pub mod index;
pub mod sawtooth;
pub mod scalar;
pub mod stats;
pub mod torus;
pub mod wigner;

pub use error::{Error, Result};
pub use sawtooth::{lyapunov, DftSign, Propagator, SawtoothParams};
pub use scalar::Real;
pub use stats::{
    ensemble_gaussianity, excess, negative_fraction, negativity_time, relaxation_time,
    value_distribution, GaussianReference, Moments, RelaxationSeries, ValueDistribution,
};
pub use torus::{inner_product, StateVector, RNG_IDENTITY};
pub use wigner::{
    wigner_fast, wigner_naive, wigner_point, DeltaKernel, WignerGrid, WignerTransform,
};

pub type State = StateVector<f64>;
pub type State32 = StateVector<f32>;
pub type Grid = WignerGrid<f64>;
pub type Grid32 = WignerGrid<f32>;
pub type Kernel = DeltaKernel<f64>;
pub type SawtoothPropagator = Propagator<f64>;
pub type Distribution = ValueDistribution<f64>;
pub type Series = RelaxationSeries<f64>;
pub type Transform = WignerTransform<f64>;
