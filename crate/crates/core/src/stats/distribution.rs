use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::stats::moments::Moments;
use crate::wigner::WignerGrid;

/// Default number of histogram bins.
pub const DEFAULT_BINS: usize = 101;

/// Histogram of Wigner values plus moments taken from the raw values.
#[derive(Debug, Clone, PartialEq)]
pub struct ValueDistribution<T: Real> {
    pub bin_edges: Vec<T>,
    /// Probability density per bin, `count / (total * width)`.
    pub densities: Vec<T>,
    pub mean: T,
    pub sigma: T,
    pub fourth_central: T,
    pub neg_fraction: T,
    /// sigma / mean.
    pub kappa: T,
    pub count: usize,
    /// Set when every value was identical; the histogram is then one unit bin.
    pub degenerate: bool,
}

impl<T: Real> ValueDistribution<T> {
    pub fn from_values(values: &[T], bins: usize) -> Result<Self> {
        if bins < 2 {
            return Err(Error::InvalidArgument(format!(
                "bin count must be >= 2, got {bins}"
            )));
        }
        if values.is_empty() {
            return Err(Error::InvalidArgument("no values to bin".into()));
        }
        let moments = Moments::from_slice(values);
        let (lo, hi) = values
            .iter()
            .fold((T::infinity(), T::neg_infinity()), |(lo, hi), &v| {
                (lo.min(v), hi.max(v))
            });
        let total = T::of_usize(values.len());
        let degenerate = !(hi > lo);
        let (bin_edges, densities) = if degenerate {
            let half = T::lit(0.5);
            (vec![lo - half, lo + half], vec![T::one()])
        } else {
            let width = (hi - lo) / T::of_usize(bins);
            let mut counts = vec![0usize; bins];
            for &v in values {
                counts[bin_index(v, lo, width, bins)] += 1;
            }
            let edges = (0..=bins).map(|i| lo + width * T::of_usize(i)).collect();
            let dens = counts
                .iter()
                .map(|&c| T::of_usize(c) / (total * width))
                .collect();
            (edges, dens)
        };
        let mean = moments.mean();
        let sigma = moments.sigma();
        Ok(Self {
            bin_edges,
            densities,
            mean,
            sigma,
            fourth_central: moments.fourth_central(),
            neg_fraction: negative_fraction_of(values, T::zero_floor()),
            kappa: sigma / mean,
            count: values.len(),
            degenerate,
        })
    }

    pub fn bin_width(&self) -> T {
        self.bin_edges[1] - self.bin_edges[0]
    }

    pub fn bin_centers(&self) -> Vec<T> {
        let half = T::lit(0.5);
        self.bin_edges
            .windows(2)
            .map(|e| (e[0] + e[1]) * half)
            .collect()
    }

    /// sum densities * width; 1 up to rounding.
    pub fn total_mass(&self) -> T {
        let w = self.bin_width();
        self.densities.iter().fold(T::zero(), |a, &d| a + d * w)
    }

    pub fn excess(&self) -> Result<T> {
        excess(self)
    }
}

#[inline]
pub(crate) fn bin_index<T: Real>(v: T, lo: T, width: T, bins: usize) -> usize {
    let raw = ((v - lo) / width).floor();
    if raw < T::zero() {
        0
    } else {
        raw.to_usize().unwrap_or(bins - 1).min(bins - 1)
    }
}

/// Histogram and moments of all N^2 grid values over uniform bins on [min, max].
pub fn value_distribution<T: Real>(
    grid: &WignerGrid<T>,
    bins: usize,
) -> Result<ValueDistribution<T>> {
    ValueDistribution::from_values(grid.values(), bins)
}

/// <(w - <W>)^4> / sigma^4 - 3.
pub fn excess<T: Real>(dist: &ValueDistribution<T>) -> Result<T> {
    if !(dist.sigma > T::zero()) {
        return Err(Error::ZeroSigma);
    }
    let s2 = dist.sigma * dist.sigma;
    Ok(dist.fourth_central / (s2 * s2) - T::lit(3.0))
}

/// Fraction of grid points with a negative Wigner value.
///
/// Values within the transform's noise floor (`Real::zero_floor`, 1e-10 for
/// f64) of zero count as zero, and zero counts as non-negative.
pub fn negative_fraction<T: Real>(grid: &WignerGrid<T>) -> T {
    negative_fraction_of(grid.values(), T::zero_floor())
}

pub fn negative_fraction_of<T: Real>(values: &[T], floor: T) -> T {
    T::of_usize(negative_count_of(values, floor)) / T::of_usize(values.len())
}

/// Number of values below `-floor`.
pub fn negative_count_of<T: Real>(values: &[T], floor: T) -> usize {
    values.iter().filter(|&&v| v < -floor).count()
}
