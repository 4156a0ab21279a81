//! Value statistics pooled over an ensemble of random states.

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::stats::distribution::{bin_index, negative_fraction, DEFAULT_BINS};
use crate::stats::gaussian::GaussianReference;
use crate::stats::moments::Moments;
use crate::torus::StateVector;
use crate::wigner::WignerTransform;

/// Resolution of the pooled empirical CDF.
pub const CDF_BINS: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleStats<T: Real> {
    pub excess: T,
    pub neg_fraction: T,
    pub mean: T,
    pub sigma: T,
    pub min: T,
    pub max: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleSummary<T: Real> {
    pub dim: usize,
    pub seed: u64,
    pub samples: Vec<SampleStats<T>>,
    pub mean_excess: T,
    pub mean_neg_fraction: T,
    /// Moments of all values of all samples together.
    pub pooled: Moments<T>,
    /// Upper bound on sup_w |F_pooled(w) - F_gauss(w)|, resolved to
    /// about 0.4 / `CDF_BINS` of the pooled range.
    pub sup_distance: f64,
    pub pooled_edges: Vec<T>,
    pub pooled_densities: Vec<T>,
}

/// Random state number `index` of the ensemble seeded with `seed`. Each
/// sample draws from its own ChaCha20 stream.
pub fn ensemble_state<T: Real>(dim: usize, seed: u64, index: u64) -> Result<StateVector<T>> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(index);
    StateVector::random_from_rng(dim, &mut rng)
}

pub fn ensemble_gaussianity<T: Real>(
    dim: usize,
    samples: usize,
    seed: u64,
) -> Result<EnsembleSummary<T>> {
    ensemble_gaussianity_with_bins(dim, samples, seed, DEFAULT_BINS)
}

pub fn ensemble_gaussianity_with_bins<T: Real>(
    dim: usize,
    samples: usize,
    seed: u64,
    bins: usize,
) -> Result<EnsembleSummary<T>> {
    if samples == 0 {
        return Err(Error::InvalidArgument(
            "ensemble needs at least one sample".into(),
        ));
    }
    if bins < 2 {
        return Err(Error::InvalidArgument(format!(
            "bin count must be >= 2, got {bins}"
        )));
    }
    let reference = GaussianReference::new(dim)?;
    let transform = WignerTransform::<T>::new(dim)?;

    // Pass 1: per-sample statistics and the pooled range.
    let mut stats = Vec::with_capacity(samples);
    let mut pooled = Moments::new();
    for i in 0..samples {
        let grid = transform.compute(&ensemble_state(dim, seed, i as u64)?)?;
        let m = grid.moments();
        let (min, max) = grid
            .values()
            .iter()
            .fold((T::infinity(), T::neg_infinity()), |(a, b), &v| {
                (a.min(v), b.max(v))
            });
        stats.push(SampleStats {
            excess: m.excess().ok_or(Error::ZeroSigma)?,
            neg_fraction: negative_fraction(&grid),
            mean: m.mean(),
            sigma: m.sigma(),
            min,
            max,
        });
        pooled = pooled.merge(m);
    }
    let lo = stats.iter().fold(T::infinity(), |a, s| a.min(s.min));
    let hi = stats.iter().fold(T::neg_infinity(), |a, s| a.max(s.max));

    // Pass 2: regenerate the same states and bin into the pooled range.
    let width = (hi - lo) / T::of_usize(bins);
    let fine_width = (hi - lo) / T::of_usize(CDF_BINS);
    let mut counts = vec![0u64; bins];
    let mut fine = vec![0u64; CDF_BINS];
    for i in 0..samples {
        let grid = transform.compute(&ensemble_state(dim, seed, i as u64)?)?;
        for &v in grid.values() {
            counts[bin_index(v, lo, width, bins)] += 1;
            fine[bin_index(v, lo, fine_width, CDF_BINS)] += 1;
        }
    }
    let total: u64 = counts.iter().sum();
    let total_t = T::from_u64(total).unwrap();

    let sup_distance = cdf_bound(&fine, lo.as_f64(), fine_width.as_f64(), &reference);
    let nf = T::of_usize(samples);
    Ok(EnsembleSummary {
        dim,
        seed,
        mean_excess: stats.iter().fold(T::zero(), |a, s| a + s.excess) / nf,
        mean_neg_fraction: stats.iter().fold(T::zero(), |a, s| a + s.neg_fraction) / nf,
        samples: stats,
        pooled,
        sup_distance,
        pooled_edges: (0..=bins).map(|i| lo + width * T::of_usize(i)).collect(),
        pooled_densities: counts
            .iter()
            .map(|&c| T::from_u64(c).unwrap() / (total_t * width))
            .collect(),
    })
}

/// Bound on the Kolmogorov distance from binned counts. On a bin [a, b) the
/// empirical CDF lies in [C(a), C(b)] and the reference in [F(a), F(b)].
fn cdf_bound(counts: &[u64], lo: f64, width: f64, reference: &GaussianReference) -> f64 {
    let total: u64 = counts.iter().sum();
    let total = total as f64;
    let mut below = 0u64;
    let mut sup = reference.cdf(lo);
    for (i, &c) in counts.iter().enumerate() {
        let a = lo + width * i as f64;
        let b = lo + width * (i + 1) as f64;
        let ca = below as f64 / total;
        below += c;
        let cb = below as f64 / total;
        sup = sup.max(cb - reference.cdf(a)).max(reference.cdf(b) - ca);
    }
    let hi = lo + width * counts.len() as f64;
    sup.max(1.0 - reference.cdf(hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats::gaussian::kolmogorov_distance;
    use crate::wigner::wigner_fast;

    #[test]
    fn binned_bound_brackets_exact_distance() {
        let s = ensemble_gaussianity::<f64>(27, 1, 3).unwrap();
        let grid = wigner_fast(&ensemble_state::<f64>(27, 3, 0).unwrap()).unwrap();
        let exact = kolmogorov_distance(grid.values(), &GaussianReference::new(27).unwrap());
        assert!(s.sup_distance >= exact - 1e-12);
        assert!(s.sup_distance <= exact + 1e-3);
    }

    #[test]
    fn deterministic_and_seed_dependent() {
        let a = ensemble_gaussianity::<f64>(27, 4, 11).unwrap();
        let b = ensemble_gaussianity::<f64>(27, 4, 11).unwrap();
        assert_eq!(a, b);
        let c = ensemble_gaussianity::<f64>(27, 4, 12).unwrap();
        assert_ne!(a.mean_excess, c.mean_excess);
    }

    #[test]
    fn pooled_histogram_is_normalized() {
        let s = ensemble_gaussianity_with_bins::<f64>(81, 3, 5, 37).unwrap();
        let w = s.pooled_edges[1] - s.pooled_edges[0];
        let mass: f64 = s.pooled_densities.iter().map(|d| d * w).sum();
        assert!((mass - 1.0).abs() < 1e-9);
        assert_eq!(s.pooled.count(), 3 * 81 * 81);
        assert!((s.pooled.variance() - (1.0 + 0.0)).abs() < 1e-6 + s.pooled.mean().powi(2));
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(ensemble_gaussianity::<f64>(27, 0, 1).is_err());
        assert!(ensemble_gaussianity::<f64>(28, 2, 1).is_err());
        assert!(ensemble_gaussianity_with_bins::<f64>(27, 2, 1, 1).is_err());
    }
}
