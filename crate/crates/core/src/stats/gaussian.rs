use libm::erfc;

use crate::error::{Error, Result};
use crate::index::check_odd;

/// Limiting value distribution of random states: unit-width Gaussian centred
/// at the fixed grid mean (N-1)^{-1/2}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianReference {
    pub center: f64,
    pub width: f64,
}

impl GaussianReference {
    pub fn new(dim: usize) -> Result<Self> {
        check_odd(dim)?;
        if dim < 3 {
            return Err(Error::SingularNormalization(dim));
        }
        Ok(Self {
            center: ((dim - 1) as f64).sqrt().recip(),
            width: 1.0,
        })
    }

    pub fn density(&self, w: f64) -> f64 {
        let z = (w - self.center) / self.width;
        (-0.5 * z * z).exp() / (self.width * (2.0 * std::f64::consts::PI).sqrt())
    }

    pub fn cdf(&self, w: f64) -> f64 {
        let z = (w - self.center) / self.width;
        0.5 * erfc(-z / std::f64::consts::SQRT_2)
    }
}

/// Exact Kolmogorov distance sup_w |F_emp(w) - F(w)| of raw samples.
pub fn kolmogorov_distance<T: crate::Real>(values: &[T], reference: &GaussianReference) -> f64 {
    let mut sorted: Vec<f64> = values.iter().map(|v| v.as_f64()).collect();
    sorted.sort_unstable_by(f64::total_cmp);
    let n = sorted.len() as f64;
    sorted.iter().enumerate().fold(0.0f64, |acc, (i, &x)| {
        let f = reference.cdf(x);
        acc.max((i + 1) as f64 / n - f).max(f - i as f64 / n)
    })
}
