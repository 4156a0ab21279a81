//! Discrete Wigner function of a pure state on the odd-N torus.
//!
//! `W(n, m) = N/sqrt(N-1) sum_{n', l} exp(-2 pi i n' m / N) d_{2l - 2n + n'} <l+n'|psi><psi|l>`
//! with the half-integer kernel `d` of [`DeltaKernel`]. For unit-norm input the
//! grid has mean `(N-1)^{-1/2}` and variance exactly 1.

mod fast;
mod grid;
mod kernel;
mod naive;

pub use fast::{wigner_fast, WignerTransform};
pub use grid::WignerGrid;
pub use kernel::DeltaKernel;
pub use naive::{wigner_naive, wigner_point};

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::torus::StateVector;

/// N / sqrt(N - 1).
pub(crate) fn prefactor<T: Real>(dim: usize) -> T {
    T::of_usize(dim) / T::of_usize(dim - 1).sqrt()
}

pub(crate) fn check_transformable<T: Real>(psi: &StateVector<T>) -> Result<()> {
    if psi.dim() < 3 {
        return Err(Error::SingularNormalization(psi.dim()));
    }
    psi.check_normalized()
}

/// Expected grid mean for a unit-norm state, `(N-1)^{-1/2}`.
pub fn expected_mean<T: Real>(dim: usize) -> T {
    T::of_usize(dim - 1).sqrt().recip()
}

/// Marginal over momentum, `(1/N) sum_m W(n, m)`, for each n in symmetric order.
pub fn position_marginal<T: Real>(grid: &WignerGrid<T>) -> Vec<T> {
    let inv = T::of_usize(grid.dim()).recip();
    grid.values()
        .chunks(grid.dim())
        .map(|row| row.iter().fold(T::zero(), |a, &b| a + b) * inv)
        .collect()
}
