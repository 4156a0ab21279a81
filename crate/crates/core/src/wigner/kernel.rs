use crate::error::Result;
use crate::index::check_odd;
use crate::scalar::Real;

/// Table of the half-integer kernel `d_k = (1/N) sum_{m'} exp(i pi m' k / N)`
/// over one period `k = 0..2N`, m' running over the symmetric range.
///
/// Odd k use `sin(pi k / 2) / (N sin(pi k / 2N))`; even k are exactly the
/// Kronecker delta of `k/2 = 0 mod N`.
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaKernel<T: Real> {
    dim: usize,
    table: Vec<T>,
}

impl<T: Real> DeltaKernel<T> {
    pub fn new(dim: usize) -> Result<Self> {
        check_odd(dim)?;
        let nf = dim as f64;
        let pi = std::f64::consts::PI;
        let mut table = vec![T::zero(); 2 * dim];
        table[0] = T::one();
        // Odd k only; even k != 0 stay exactly zero. Mirror k -> 2N - k.
        for k in (1..=dim).step_by(2) {
            let kf = k as f64;
            let v = T::lit((pi * kf / 2.0).sin() / (nf * (pi * kf / (2.0 * nf)).sin()));
            table[k] = v;
            table[2 * dim - k] = v;
        }
        Ok(Self { dim, table })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// One period, `k = 0..2N`.
    pub fn table(&self) -> &[T] {
        &self.table
    }

    /// Kernel value at any integer argument (period 2N).
    #[inline]
    pub fn get(&self, k: i64) -> T {
        self.table[k.rem_euclid(2 * self.dim as i64) as usize]
    }
}
