//! Quantized sawtooth map: U = exp(-i T p^2 / 2) exp(i K T n^2 / 2), T = 2 pi / N.
//!
//! The kick is diagonal in position, the free part in momentum. Momentum
//! eigenvalues k run over the symmetric range, and the position-to-momentum
//! transform is unitary (1/sqrt(N) on each side).

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::fft::Dft;
use crate::index::{check_odd, symmetric_range, to_natural, to_symmetric};
use crate::scalar::Real;
use crate::torus::StateVector;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SawtoothParams {
    /// Kicking strength K.
    pub kick: f64,
    /// Hilbert space dimension N (odd).
    pub dim: usize,
}

impl SawtoothParams {
    pub fn new(kick: f64, dim: usize) -> Result<Self> {
        check_odd(dim)?;
        if !kick.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "kicking strength {kick} is not finite"
            )));
        }
        Ok(Self { kick, dim })
    }

    /// T = 2 pi / N.
    pub fn period(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.dim as f64
    }

    /// The classical map is ergodic and uniformly hyperbolic only for K > 0.
    pub fn is_ergodic(&self) -> bool {
        self.kick > 0.0
    }
}

/// Sign of the exponent in the position-to-momentum transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DftSign {
    /// phi_k = N^{-1/2} sum_n exp(-2 pi i k n / N) psi_n
    #[default]
    Negative,
    /// phi_k = N^{-1/2} sum_n exp(+2 pi i k n / N) psi_n
    Positive,
}

#[derive(Debug, Clone)]
pub struct Propagator<T: Real> {
    params: SawtoothParams,
    sign: DftSign,
    kick_phases: Vec<Complex<T>>,
    kinetic_phases: Vec<Complex<T>>,
    // natural-order copies used while stepping
    kick_nat: Vec<Complex<T>>,
    kinetic_nat: Vec<Complex<T>>,
    dft: Dft<T>,
}

impl<T: Real> Propagator<T> {
    pub fn new(params: SawtoothParams) -> Result<Self> {
        Self::with_sign(params, DftSign::default())
    }

    pub fn with_sign(params: SawtoothParams, sign: DftSign) -> Result<Self> {
        let dim = params.dim;
        check_odd(dim)?;
        let pi = std::f64::consts::PI;
        let d = dim as i64;
        // K T n^2 / 2 = pi K n^2 / N, reduced mod 2 pi before the cosine.
        let kick_phases: Vec<Complex<T>> = symmetric_range(dim)
            .map(|n| {
                let turns = (params.kick * (n * n) as f64 / dim as f64).rem_euclid(2.0);
                phase(pi * turns)
            })
            .collect();
        // -T k^2 / 2 = -pi k^2 / N, exact integer reduction mod 2N.
        let kinetic_phases: Vec<Complex<T>> = symmetric_range(dim)
            .map(|k| phase(-pi * (k * k).rem_euclid(2 * d) as f64 / dim as f64))
            .collect();
        let zero = Complex::new(T::zero(), T::zero());
        let mut kick_nat = vec![zero; dim];
        let mut kinetic_nat = vec![zero; dim];
        to_natural(&kick_phases, &mut kick_nat);
        to_natural(&kinetic_phases, &mut kinetic_nat);
        Ok(Self {
            params,
            sign,
            kick_phases,
            kinetic_phases,
            kick_nat,
            kinetic_nat,
            dft: Dft::new(dim),
        })
    }

    pub fn params(&self) -> &SawtoothParams {
        &self.params
    }

    pub fn sign(&self) -> DftSign {
        self.sign
    }

    /// exp(i K T n^2 / 2) over n in symmetric order.
    pub fn kick_phases(&self) -> &[Complex<T>] {
        &self.kick_phases
    }

    /// exp(-i T k^2 / 2) over k in symmetric order.
    pub fn kinetic_phases(&self) -> &[Complex<T>] {
        &self.kinetic_phases
    }

    fn check_dim(&self, psi: &StateVector<T>) -> Result<()> {
        if psi.dim() != self.params.dim {
            Err(Error::DimensionMismatch {
                left: self.params.dim,
                right: psi.dim(),
            })
        } else {
            Ok(())
        }
    }

    fn to_momentum(&self, buf: &mut [Complex<T>], scratch: &mut [Complex<T>]) {
        match self.sign {
            DftSign::Negative => self.dft.forward(buf, scratch),
            DftSign::Positive => self.dft.inverse(buf, scratch),
        }
    }

    fn to_position(&self, buf: &mut [Complex<T>], scratch: &mut [Complex<T>]) {
        match self.sign {
            DftSign::Negative => self.dft.inverse(buf, scratch),
            DftSign::Positive => self.dft.forward(buf, scratch),
        }
    }

    fn apply(&self, psi: &StateVector<T>, adjoint: bool) -> Result<StateVector<T>> {
        self.check_dim(psi)?;
        let dim = self.params.dim;
        let mut buf = vec![Complex::new(T::zero(), T::zero()); dim];
        to_natural(psi.amplitudes(), &mut buf);
        let mut scratch = self.dft.make_scratch();
        let inv_n = T::of_usize(dim).recip();
        let conj_if = |c: Complex<T>| if adjoint { c.conj() } else { c };

        if !adjoint {
            buf.iter_mut()
                .zip(&self.kick_nat)
                .for_each(|(v, p)| *v *= p);
        }
        self.to_momentum(&mut buf, &mut scratch);
        buf.iter_mut()
            .zip(&self.kinetic_nat)
            .for_each(|(v, p)| *v = *v * conj_if(*p) * inv_n);
        self.to_position(&mut buf, &mut scratch);
        if adjoint {
            buf.iter_mut()
                .zip(&self.kick_nat)
                .for_each(|(v, p)| *v *= p.conj());
        }

        let mut amps = vec![Complex::new(T::zero(), T::zero()); dim];
        to_symmetric(&buf, &mut amps);
        StateVector::from_amplitudes(amps)
    }

    /// One application of U: kick in position, free evolution in momentum.
    pub fn step(&self, psi: &StateVector<T>) -> Result<StateVector<T>> {
        self.apply(psi, false)
    }

    /// One application of U^dagger.
    pub fn adjoint_step(&self, psi: &StateVector<T>) -> Result<StateVector<T>> {
        self.apply(psi, true)
    }

    /// U^t psi.
    pub fn evolve(&self, psi: &StateVector<T>, steps: usize) -> Result<StateVector<T>> {
        self.check_dim(psi)?;
        let mut state = psi.clone();
        for _ in 0..steps {
            state = self.step(&state)?;
        }
        Ok(state)
    }

    /// Dense N x N matrix of U (row-major, symmetric order). For checks at small N.
    pub fn matrix(&self) -> Vec<Complex<T>> {
        let dim = self.params.dim;
        let mut out = vec![Complex::new(T::zero(), T::zero()); dim * dim];
        for (col, n) in symmetric_range(dim).enumerate() {
            let e = StateVector::position(dim, n).expect("valid basis index");
            let u = self.step(&e).expect("matching dimension");
            for (row, a) in u.amplitudes().iter().enumerate() {
                out[row * dim + col] = *a;
            }
        }
        out
    }
}

fn phase<T: Real>(angle: f64) -> Complex<T> {
    Complex::new(T::lit(angle.cos()), T::lit(angle.sin()))
}

/// Lyapunov exponent of the classical sawtooth map,
/// `log((2 + K + sqrt((2 + K)^2 - 4)) / 2)`, defined for K > 0.
pub fn lyapunov<T: Real>(kick: T) -> Result<T> {
    if !(kick > T::zero()) || !kick.is_finite() {
        return Err(Error::Domain(format!(
            "Lyapunov exponent needs K > 0, got {kick}"
        )));
    }
    let two = T::lit(2.0);
    let trace = two + kick;
    // (2+K)^2 - 4 = K (K + 4), which keeps precision as K -> 0.
    Ok(((trace + (kick * (kick + T::lit(4.0))).sqrt()) / two).ln())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::inner_product;

    type P = Propagator<f64>;
    type S = StateVector<f64>;

    fn dist(a: &S, b: &S) -> f64 {
        a.amplitudes()
            .iter()
            .zip(b.amplitudes())
            .map(|(x, y)| (x - y).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    #[test]
    fn phases_are_unimodular() {
        let prop = P::new(SawtoothParams::new(0.5, 3).unwrap()).unwrap();
        assert_eq!(prop.kick_phases()[1], Complex::new(1.0, 0.0));
        for &(k, n) in &[(0.5, 2187usize), (1.7, 243), (-0.3, 27)] {
            let prop = P::new(SawtoothParams::new(k, n).unwrap()).unwrap();
            for p in prop.kick_phases().iter().chain(prop.kinetic_phases()) {
                assert!((p.norm() - 1.0).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn rejects_even_dimension() {
        assert!(SawtoothParams::new(0.5, 4).is_err());
        assert!(SawtoothParams::new(f64::NAN, 5).is_err());
    }

    #[test]
    fn zero_kick_is_diagonal_in_momentum() {
        let prop = P::new(SawtoothParams::new(0.0, 3).unwrap()).unwrap();
        let psi = S::momentum(3, 0).unwrap();
        let out = prop.step(&psi).unwrap();
        assert!(dist(&psi, &out) < 1e-12);
        for k in -1..=1 {
            let psi = S::momentum(3, k).unwrap();
            let out = prop.step(&psi).unwrap();
            let overlap = inner_product(&psi, &out).unwrap();
            assert!((overlap.norm() - 1.0).abs() < 1e-12, "k={k}");
        }
    }

    #[test]
    fn step_is_unitary_and_reversible() {
        let prop = P::new(SawtoothParams::new(0.5, 243).unwrap()).unwrap();
        let psi = S::random(243, 9).unwrap();
        let fwd = prop.step(&psi).unwrap();
        assert!((fwd.norm_sqr() - 1.0).abs() < 1e-12);
        let back = prop.adjoint_step(&fwd).unwrap();
        assert!(dist(&psi, &back) < 1e-10);
    }

    #[test]
    fn evolve_composes() {
        let prop = P::new(SawtoothParams::new(1.3, 81).unwrap()).unwrap();
        let psi = S::coherent(81, 5.0, -3.0).unwrap();
        assert_eq!(prop.evolve(&psi, 0).unwrap(), psi);
        let a = prop.evolve(&psi, 7).unwrap();
        let ab = prop.evolve(&a, 5).unwrap();
        assert!(dist(&ab, &prop.evolve(&psi, 12).unwrap()) < 1e-11);
    }

    #[test]
    fn matches_explicit_matrix() {
        // U_{n n'} = sum_k <n|k> e^{-i T k^2/2} <k|n'> e^{i K T n'^2/2}, <n|k> = e^{2 pi i k n/N}/sqrt(N).
        for &(kick, dim) in &[(0.5, 3usize), (0.5, 9), (2.0, 27), (1.1, 25)] {
            let params = SawtoothParams::new(kick, dim).unwrap();
            let prop = P::new(params).unwrap();
            let t = params.period();
            let h = (dim as i64 - 1) / 2;
            let nf = dim as f64;
            let psi = S::random(dim, 77).unwrap();
            let out = prop.step(&psi).unwrap();
            for n in -h..=h {
                let mut acc = Complex::new(0.0, 0.0);
                for np in -h..=h {
                    let mut u = Complex::new(0.0, 0.0);
                    for k in -h..=h {
                        let a = 2.0 * std::f64::consts::PI * (k * (n - np)) as f64 / nf
                            - t * (k * k) as f64 / 2.0;
                        u += Complex::from_polar(1.0 / nf, a);
                    }
                    u *= Complex::from_polar(1.0, kick * t * (np * np) as f64 / 2.0);
                    acc += u * psi.amp(np);
                }
                assert!((acc - out.amp(n)).norm() < 1e-12, "K={kick} N={dim} n={n}");
            }
        }
    }

    #[test]
    fn dft_sign_does_not_change_the_map() {
        let params = SawtoothParams::new(0.5, 27).unwrap();
        let neg = P::with_sign(params, DftSign::Negative).unwrap();
        let pos = P::with_sign(params, DftSign::Positive).unwrap();
        let psi = S::coherent(27, 2.0, 1.0).unwrap();
        let a = neg.evolve(&psi, 20).unwrap();
        let b = pos.evolve(&psi, 20).unwrap();
        assert!(dist(&a, &b) < 1e-12);
    }

    #[test]
    fn dimension_mismatch() {
        let prop = P::new(SawtoothParams::new(0.5, 9).unwrap()).unwrap();
        let psi = S::position(5, 0).unwrap();
        assert!(matches!(
            prop.step(&psi),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn lyapunov_closed_form() {
        assert!((lyapunov(0.5f64).unwrap() - std::f64::consts::LN_2).abs() < 1e-15);
        assert!((lyapunov(2.0f64).unwrap() - (2.0 + 3f64.sqrt()).ln()).abs() < 1e-15);
        assert!((lyapunov(2.0f64).unwrap() - 1.316957896924816).abs() < 1e-12);
        assert!(lyapunov(1e-12f64).unwrap() < 1e-5);
        assert!(lyapunov(0.0f64).is_err());
        assert!(lyapunov(-1.0f64).is_err());
        let ks: Vec<f64> = (1..200).map(|i| i as f64 * 0.05).collect();
        for w in ks.windows(2) {
            assert!(lyapunov(w[0]).unwrap() < lyapunov(w[1]).unwrap());
        }
    }
}
