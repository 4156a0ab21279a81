//! Direct evaluation of the defining double sum, used as the reference route.

use num_complex::Complex;

use super::{check_transformable, prefactor, DeltaKernel, WignerGrid};
use crate::error::{Error, Result};
use crate::index::{check_index, symmetric_range};
use crate::scalar::Real;
use crate::torus::StateVector;

/// exp(-2 pi i r / N) for r = 0..N.
fn roots<T: Real>(dim: usize) -> Vec<Complex<T>> {
    (0..dim)
        .map(|r| {
            let a = -2.0 * std::f64::consts::PI * r as f64 / dim as f64;
            Complex::new(T::lit(a.cos()), T::lit(a.sin()))
        })
        .collect()
}

fn point_sum<T: Real>(
    psi: &StateVector<T>,
    kernel: &DeltaKernel<T>,
    roots: &[Complex<T>],
    n: i64,
    m: i64,
) -> Complex<T> {
    let dim = psi.dim();
    let mut acc = Complex::new(T::zero(), T::zero());
    for np in symmetric_range(dim) {
        let phase = roots[(np * m).rem_euclid(dim as i64) as usize];
        let mut inner = Complex::new(T::zero(), T::zero());
        for l in symmetric_range(dim) {
            let d = kernel.get(2 * l - 2 * n + np);
            if d != T::zero() {
                inner += psi.amp(l + np) * psi.amp(l).conj() * d;
            }
        }
        acc += phase * inner;
    }
    acc * prefactor::<T>(dim)
}

/// Wigner grid by direct summation, O(N^4). Meant for small N (<= 81).
pub fn wigner_naive<T: Real>(psi: &StateVector<T>) -> Result<WignerGrid<T>> {
    check_transformable(psi)?;
    let dim = psi.dim();
    let kernel = DeltaKernel::new(dim)?;
    let roots = roots::<T>(dim);
    let mut values = Vec::with_capacity(dim * dim);
    let mut residue = T::zero();
    for n in symmetric_range(dim) {
        for m in symmetric_range(dim) {
            let w = point_sum(psi, &kernel, &roots, n, m);
            residue = residue.max(w.im.abs());
            values.push(w.re);
        }
    }
    if residue > T::residue_tolerance() {
        return Err(Error::ImaginaryResidue(residue.as_f64()));
    }
    Ok(WignerGrid::new(dim, values, residue))
}

/// Single value W(n, m), O(N^2).
pub fn wigner_point<T: Real>(psi: &StateVector<T>, n: i64, m: i64) -> Result<T> {
    check_transformable(psi)?;
    let dim = psi.dim();
    check_index(n, dim)?;
    check_index(m, dim)?;
    let kernel = DeltaKernel::new(dim)?;
    let w = point_sum(psi, &kernel, &roots::<T>(dim), n, m);
    if w.im.abs() > T::residue_tolerance() {
        return Err(Error::ImaginaryResidue(w.im.as_f64()));
    }
    Ok(w.re)
}
