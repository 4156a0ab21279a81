//! Unnormalized odd-length DFT plans.
//!
//! `forward` computes X_k = sum_j x_j exp(-2 pi i j k / N), `inverse` the same
//! with the opposite sign and no 1/N. Both operate in natural order.

use std::sync::Arc;

use num_complex::Complex;
use rustfft::{Fft, FftPlanner};

use crate::scalar::Real;

#[derive(Clone)]
pub struct Dft<T: Real> {
    len: usize,
    forward: Arc<dyn Fft<T>>,
    inverse: Arc<dyn Fft<T>>,
}

impl<T: Real> std::fmt::Debug for Dft<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Dft").field("len", &self.len).finish()
    }
}

impl<T: Real> Dft<T> {
    pub fn new(len: usize) -> Self {
        let mut planner = FftPlanner::new();
        Self {
            len,
            forward: planner.plan_fft_forward(len),
            inverse: planner.plan_fft_inverse(len),
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn scratch_len(&self) -> usize {
        self.forward
            .get_inplace_scratch_len()
            .max(self.inverse.get_inplace_scratch_len())
    }

    pub fn make_scratch(&self) -> Vec<Complex<T>> {
        vec![Complex::new(T::zero(), T::zero()); self.scratch_len()]
    }

    #[inline]
    pub fn forward(&self, buf: &mut [Complex<T>], scratch: &mut [Complex<T>]) {
        self.forward.process_with_scratch(buf, scratch);
    }

    #[inline]
    pub fn inverse(&self, buf: &mut [Complex<T>], scratch: &mut [Complex<T>]) {
        self.inverse.process_with_scratch(buf, scratch);
    }
}

/// Table of exp(i pi k / N) for k in 0..2N, the 2N-th roots of unity.
pub(crate) fn half_turn_phases<T: Real>(dim: usize) -> Vec<Complex<T>> {
    let period = 2 * dim;
    (0..period)
        .map(|k| {
            let angle = std::f64::consts::PI * k as f64 / dim as f64;
            Complex::new(T::lit(angle.cos()), T::lit(angle.sin()))
        })
        .collect()
}
