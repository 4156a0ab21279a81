//! Pure states on the N-dimensional Hilbert space of the quantized torus.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::index::{self, check_index, check_odd, half, slot};
use crate::scalar::Real;

/// Number of periodic images summed on each side when building a coherent state.
pub const COHERENT_IMAGES: i64 = 3;

/// Name of the generator behind [`StateVector::random`], recorded in manifests.
pub const RNG_IDENTITY: &str =
    "rand_chacha::ChaCha20Rng (seed_from_u64), rand_distr::StandardNormal";

/// Position-basis amplitudes <n|psi> over the symmetric index range.
///
/// Slot `n + (N-1)/2` holds `<n|psi>`. Lookups through [`StateVector::amp`]
/// wrap modulo N.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<T: Real> {
    dim: usize,
    amps: Vec<Complex<T>>,
}

impl<T: Real> StateVector<T> {
    /// Wraps raw amplitudes in symmetric storage order without normalizing.
    pub fn from_amplitudes(amps: Vec<Complex<T>>) -> Result<Self> {
        check_odd(amps.len())?;
        Ok(Self {
            dim: amps.len(),
            amps,
        })
    }

    /// Wraps raw amplitudes and rescales them to unit norm.
    pub fn normalized(amps: Vec<Complex<T>>) -> Result<Self> {
        let mut s = Self::from_amplitudes(amps)?;
        let norm = s.norm_sqr().sqrt();
        if norm == T::zero() || !norm.is_finite() {
            return Err(Error::NotNormalized(norm.as_f64()));
        }
        let inv = norm.recip();
        s.amps.iter_mut().for_each(|a| *a = a.scale(inv));
        Ok(s)
    }

    /// |n0>, the position eigenstate.
    pub fn position(dim: usize, n0: i64) -> Result<Self> {
        check_odd(dim)?;
        check_index(n0, dim)?;
        let mut amps = vec![Complex::new(T::zero(), T::zero()); dim];
        amps[slot(n0, dim)] = Complex::new(T::one(), T::zero());
        Ok(Self { dim, amps })
    }

    /// Momentum eigenstate in the crate's DFT convention: the forward transform
    /// `sum_n exp(-2 pi i k n / N) <n|psi> / sqrt(N)` is concentrated at `k`.
    pub fn momentum(dim: usize, k: i64) -> Result<Self> {
        check_odd(dim)?;
        check_index(k, dim)?;
        let scale = (dim as f64).sqrt().recip();
        let amps = index::symmetric_range(dim)
            .map(|n| {
                let a = 2.0 * std::f64::consts::PI * ((k * n).rem_euclid(dim as i64)) as f64
                    / dim as f64;
                Complex::new(T::lit(scale * a.cos()), T::lit(scale * a.sin()))
            })
            .collect();
        Self::normalized(amps)
    }

    /// Random state with independent complex Gaussian coefficients of variance
    /// 1/N, renormalized to unit norm. Deterministic per seed.
    pub fn random(dim: usize, seed: u64) -> Result<Self> {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        Self::random_from_rng(dim, &mut rng)
    }

    pub fn random_from_rng<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Result<Self> {
        check_odd(dim)?;
        let sd = (2.0 * dim as f64).recip().sqrt();
        let amps = (0..dim)
            .map(|_| {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                Complex::new(T::lit(sd * re), T::lit(sd * im))
            })
            .collect();
        Self::normalized(amps)
    }

    /// Periodized Gaussian packet centred at grid position `q0`, momentum `p0`.
    ///
    /// `<n|psi> ~ sum_j exp(-(pi/N) x^2 + 2 pi i p0 x / N)`, `x = n + jN - q0`,
    /// with `|j| <= 3`.
    pub fn coherent(dim: usize, q0: f64, p0: f64) -> Result<Self> {
        Self::coherent_with_images(dim, q0, p0, COHERENT_IMAGES)
    }

    /// As [`StateVector::coherent`] with an explicit image truncation.
    pub fn coherent_with_images(dim: usize, q0: f64, p0: f64, images: i64) -> Result<Self> {
        check_odd(dim)?;
        let h = half(dim) as f64;
        for v in [q0, p0] {
            if !(v.abs() <= h) {
                return Err(Error::CoordinateOutOfRange { value: v, dim });
            }
        }
        let nf = dim as f64;
        let pi = std::f64::consts::PI;
        let amps = index::symmetric_range(dim)
            .map(|n| {
                let mut acc = Complex::new(0.0f64, 0.0);
                for j in -images..=images {
                    let x = n as f64 + j as f64 * nf - q0;
                    let envelope = (-(pi / nf) * x * x).exp();
                    let phase = 2.0 * pi * p0 * x / nf;
                    acc += Complex::from_polar(envelope, phase);
                }
                Complex::new(T::lit(acc.re), T::lit(acc.im))
            })
            .collect();
        Self::normalized(amps)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Amplitudes in symmetric storage order.
    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex<T>> {
        self.amps
    }

    /// <n|psi> with n reduced modulo N.
    #[inline]
    pub fn amp(&self, n: i64) -> Complex<T> {
        self.amps[slot(n, self.dim)]
    }

    pub fn norm_sqr(&self) -> T {
        self.amps
            .iter()
            .fold(T::zero(), |acc, a| acc + a.norm_sqr())
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sqr() - T::one()).abs() <= T::norm_tolerance()
    }

    pub(crate) fn check_normalized(&self) -> Result<()> {
        if self.is_normalized() {
            Ok(())
        } else {
            Err(Error::NotNormalized(self.norm_sqr().as_f64()))
        }
    }
}

/// <a|b> = sum_n conj(<n|a>) <n|b>.
pub fn inner_product<T: Real>(a: &StateVector<T>, b: &StateVector<T>) -> Result<Complex<T>> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch {
            left: a.dim,
            right: b.dim,
        });
    }
    Ok(a.amps
        .iter()
        .zip(&b.amps)
        .fold(Complex::new(T::zero(), T::zero()), |acc, (x, y)| {
            acc + x.conj() * y
        }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type S = StateVector<f64>;

    fn c(re: f64) -> Complex<f64> {
        Complex::new(re, 0.0)
    }

    #[test]
    fn position_basis_vectors() {
        let s = S::position(3, 0).unwrap();
        assert_eq!(s.amplitudes(), &[c(0.0), c(1.0), c(0.0)]);
        assert_eq!(S::position(1, 0).unwrap().amplitudes(), &[c(1.0)]);
        let s = S::position(5, -2).unwrap();
        assert_eq!(s.norm_sqr(), 1.0);
        assert_eq!(s.amp(-2), c(1.0));
    }

    #[test]
    fn position_errors() {
        assert_eq!(S::position(4, 0), Err(Error::InvalidDimension(4)));
        assert_eq!(S::position(0, 0), Err(Error::InvalidDimension(0)));
        assert_eq!(
            S::position(5, 3),
            Err(Error::IndexOutOfRange { index: 3, dim: 5 })
        );
    }

    #[test]
    fn random_state_is_normalized_and_deterministic() {
        let a = S::random(2187, 42).unwrap();
        assert!((a.norm_sqr() - 1.0).abs() < 1e-12);
        let b = S::random(2187, 42).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, S::random(2187, 43).unwrap());
        assert_eq!(S::random(8, 1), Err(Error::InvalidDimension(8)));
    }

    #[test]
    fn random_state_component_variance() {
        // Ensemble average of |c_l|^2 is 1/N per component.
        let dim = 243;
        let draws = 2000;
        let mut sum = vec![0.0; dim];
        let mut sum_sq = vec![0.0; dim];
        for seed in 0..draws {
            let s = S::random(dim, seed).unwrap();
            for (l, a) in s.amplitudes().iter().enumerate() {
                let p = a.norm_sqr();
                sum[l] += p;
                sum_sq[l] += p * p;
            }
        }
        let target = 1.0 / dim as f64;
        let mut outside = 0;
        for l in 0..dim {
            let mean = sum[l] / draws as f64;
            let var = sum_sq[l] / draws as f64 - mean * mean;
            let se = (var / draws as f64).sqrt();
            if (mean - target).abs() > 3.0 * se {
                outside += 1;
            }
        }
        // 3 sigma: about 0.3% of components expected outside.
        assert!(
            outside <= 5,
            "{outside} components outside 3 standard errors"
        );
    }

    #[test]
    fn random_state_real_parts_are_gaussian() {
        let dim = 27;
        let mut xs = Vec::new();
        for seed in 0..400u64 {
            let s = S::random(dim, seed).unwrap();
            xs.extend(
                s.amplitudes()
                    .iter()
                    .map(|a| a.re * (2.0 * dim as f64).sqrt()),
            );
        }
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        let m2 = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
        let m4 = xs.iter().map(|x| (x - mean).powi(4)).sum::<f64>() / n;
        let excess = m4 / (m2 * m2) - 3.0;
        assert!(xs.len() >= 10_000);
        assert!(excess.abs() < 0.1, "excess {excess}");
    }

    #[test]
    fn coherent_at_origin_peaks_at_zero_and_is_even() {
        let s = S::coherent(27, 0.0, 0.0).unwrap();
        assert!((s.norm_sqr() - 1.0).abs() < 1e-12);
        let peak = s.amp(0).norm();
        for n in -13..=13 {
            assert!(s.amp(n).norm() <= peak);
            assert!(s.amp(n).im.abs() < 1e-15);
            assert!((s.amp(n) - s.amp(-n)).norm() < 1e-15);
        }
    }

    #[test]
    fn coherent_matches_direct_periodized_gaussian() {
        let dim = 27;
        let s = S::coherent(dim, 2.5, -1.25).unwrap();
        let nf = dim as f64;
        let pi = std::f64::consts::PI;
        let raw: Vec<Complex<f64>> = (-13..=13)
            .map(|n| {
                (-20..=20)
                    .map(|j| {
                        let x = (n + j * dim as i64) as f64 - 2.5;
                        Complex::from_polar((-pi / nf * x * x).exp(), 2.0 * pi * -1.25 * x / nf)
                    })
                    .sum()
            })
            .collect();
        let norm = raw.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        for (a, b) in s.amplitudes().iter().zip(&raw) {
            assert!((a - b / norm).norm() < 1e-14);
        }
        // Peak at the grid point nearest q0 = 2.5 is either 2 or 3.
        let best = (-13..=13)
            .max_by(|&a, &b| s.amp(a).norm().total_cmp(&s.amp(b).norm()))
            .unwrap();
        assert!(best == 2 || best == 3);
    }

    #[test]
    fn coherent_integer_shift_is_cyclic() {
        let a = S::coherent(27, 1.0, 0.0).unwrap();
        let b = S::coherent(27, 0.0, 0.0).unwrap();
        for n in -13..=13 {
            assert!((a.amp(n) - b.amp(n - 1)).norm() < 1e-12);
        }
    }

    #[test]
    fn coherent_truncation_converged() {
        for &dim in &[3usize, 5, 27, 243] {
            let h = half(dim) as f64;
            for &(q0, p0) in &[(0.0, 0.0), (h, -h), (0.3 * h, 0.7 * h)] {
                let a = S::coherent_with_images(dim, q0, p0, 3).unwrap();
                let b = S::coherent_with_images(dim, q0, p0, 5).unwrap();
                for (x, y) in a.amplitudes().iter().zip(b.amplitudes()) {
                    assert!((x - y).norm() < 1e-12, "dim={dim}");
                }
            }
        }
    }

    #[test]
    fn coherent_rejects_bad_input() {
        assert_eq!(S::coherent(6, 0.0, 0.0), Err(Error::InvalidDimension(6)));
        assert!(matches!(
            S::coherent(5, 2.5, 0.0),
            Err(Error::CoordinateOutOfRange { .. })
        ));
        assert!(matches!(
            S::coherent(5, 0.0, f64::NAN),
            Err(Error::CoordinateOutOfRange { .. })
        ));
    }

    #[test]
    fn inner_products() {
        let a = S::random(27, 1).unwrap();
        assert!((inner_product(&a, &a).unwrap() - c(1.0)).norm() < 1e-12);
        let e0 = S::position(3, 0).unwrap();
        let e1 = S::position(3, 1).unwrap();
        assert_eq!(inner_product(&e0, &e1).unwrap(), c(0.0));
        let b = S::coherent(27, 3.0, 2.0).unwrap();
        let ab = inner_product(&a, &b).unwrap();
        let ba = inner_product(&b, &a).unwrap();
        assert!((ab - ba.conj()).norm() < 1e-15);
        assert_eq!(
            inner_product(&a, &e0),
            Err(Error::DimensionMismatch { left: 27, right: 3 })
        );
    }

    #[test]
    fn momentum_state_is_unit_norm() {
        let s = S::momentum(9, 2).unwrap();
        assert!((s.norm_sqr() - 1.0).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn amplitude_lookup_wraps(seed in any::<u64>(), n in -1000i64..1000, half_dim in 0usize..20) {
            let dim = 2 * half_dim + 1;
            let s = S::random(dim, seed).unwrap();
            prop_assert_eq!(s.amp(n + dim as i64), s.amp(n));
            prop_assert!((s.norm_sqr() - 1.0).abs() < 1e-12);
        }
    }
}
