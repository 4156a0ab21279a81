//! O(N^2 log N) evaluation through three passes of length-N transforms.
//!
//! With rho(l, n') = psi(l + n') conj(psi(l)):
//!
//! 1. F(m', n')  = sum_l exp(+2 pi i m' l / N) rho(l, n')          (per chord n')
//! 2. C_n(n')    = (1/N) sum_m' exp(-2 pi i m' n / N) e^{i pi m' n' / N} F(m', n')
//! 3. W(n, m)    = N/sqrt(N-1) sum_n' exp(-2 pi i n' m / N) C_n(n')
//!
//! Stages 1 and 2 act on the same row (fixed n'), so one transpose separates
//! them from stage 3. The half-integer phase of stage 2 is evaluated at the
//! symmetric m' and applied before the transform.

use num_complex::Complex;
use rayon::prelude::*;

use super::{check_transformable, WignerGrid};
use crate::error::{Error, Result};
use crate::fft::{half_turn_phases, Dft};
use crate::index::{check_odd, index_of_natural, slot, to_natural};
use crate::scalar::Real;
use crate::torus::StateVector;

/// Reusable plan for repeated transforms at a fixed dimension.
#[derive(Debug, Clone)]
pub struct WignerTransform<T: Real> {
    dim: usize,
    dft: Dft<T>,
    half_turn: Vec<Complex<T>>,
}

impl<T: Real> WignerTransform<T> {
    pub fn new(dim: usize) -> Result<Self> {
        check_odd(dim)?;
        if dim < 3 {
            return Err(Error::SingularNormalization(dim));
        }
        Ok(Self {
            dim,
            dft: Dft::new(dim),
            half_turn: half_turn_phases(dim),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn compute(&self, psi: &StateVector<T>) -> Result<WignerGrid<T>> {
        check_transformable(psi)?;
        if psi.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: psi.dim(),
            });
        }
        let dim = self.dim;
        let d = dim as i64;
        let zero = Complex::new(T::zero(), T::zero());

        let mut psi_nat = vec![zero; dim];
        to_natural(psi.amplitudes(), &mut psi_nat);

        let mut buf = vec![zero; dim * dim];

        // Stages 1 and 2: row r holds the chord n' = r (mod N).
        buf.par_chunks_mut(dim).enumerate().for_each_init(
            || self.dft.make_scratch(),
            |scratch, (r, row)| {
                for (j, slot) in row.iter_mut().enumerate() {
                    let shifted = psi_nat[(j + r) % dim];
                    *slot = shifted * psi_nat[j].conj();
                }
                self.dft.inverse(row, scratch);
                let chord = index_of_natural(r, dim);
                for (i, v) in row.iter_mut().enumerate() {
                    let mp = index_of_natural(i, dim);
                    *v = *v * self.half_turn[(mp * chord).rem_euclid(2 * d) as usize];
                }
                self.dft.forward(row, scratch);
            },
        );

        transpose_square(&mut buf, dim);

        // Stage 3: row i holds position n = i (mod N), transform over n'.
        buf.par_chunks_mut(dim).for_each_init(
            || self.dft.make_scratch(),
            |scratch, row| self.dft.forward(row, scratch),
        );

        // Folded factors: 1/N from stage 2 times N/sqrt(N-1).
        let scale = T::of_usize(dim - 1).sqrt().recip();
        let mut values = vec![T::zero(); dim * dim];
        let residue = values
            .par_chunks_mut(dim)
            .enumerate()
            .map(|(sn, out)| {
                let n = sn as i64 - (d - 1) / 2;
                let src = &buf[(n.rem_euclid(d) as usize) * dim..][..dim];
                let mut res = T::zero();
                for (k, w) in src.iter().enumerate() {
                    let m = index_of_natural(k, dim);
                    out[slot(m, dim)] = w.re * scale;
                    res = res.max((w.im * scale).abs());
                }
                res
            })
            .collect::<Vec<_>>()
            .into_iter()
            .fold(T::zero(), T::max);

        if residue > T::residue_tolerance() {
            return Err(Error::ImaginaryResidue(residue.as_f64()));
        }
        Ok(WignerGrid::new(dim, values, residue))
    }
}

/// Wigner grid via the three-stage transform pipeline.
pub fn wigner_fast<T: Real>(psi: &StateVector<T>) -> Result<WignerGrid<T>> {
    WignerTransform::new(psi.dim())?.compute(psi)
}

fn transpose_square<V: Copy>(buf: &mut [V], dim: usize) {
    const BLOCK: usize = 32;
    for ib in (0..dim).step_by(BLOCK) {
        for jb in (ib..dim).step_by(BLOCK) {
            for i in ib..(ib + BLOCK).min(dim) {
                let j0 = if ib == jb { i + 1 } else { jb };
                for j in j0..(jb + BLOCK).min(dim) {
                    buf.swap(i * dim + j, j * dim + i);
                }
            }
        }
    }
}
