use crate::index::slot;
use crate::scalar::Real;
use crate::stats::moments::Moments;

/// Real Wigner values W(n, m) on the N x N phase-space grid.
///
/// Row-major over position n, columns over momentum m, both in symmetric
/// storage order. Moments over all N^2 points are computed once at build.
#[derive(Debug, Clone, PartialEq)]
pub struct WignerGrid<T: Real> {
    dim: usize,
    values: Vec<T>,
    moments: Moments<T>,
    max_residue: T,
}

impl<T: Real> WignerGrid<T> {
    pub(crate) fn new(dim: usize, values: Vec<T>, max_residue: T) -> Self {
        debug_assert_eq!(values.len(), dim * dim);
        let moments = Moments::from_slice(&values);
        Self {
            dim,
            values,
            moments,
            max_residue,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// W(n, m) for symmetric indices (wrapped mod N).
    #[inline]
    pub fn get(&self, n: i64, m: i64) -> T {
        self.values[slot(n, self.dim) * self.dim + slot(m, self.dim)]
    }

    /// Values at fixed position `n`, over m in symmetric order.
    pub fn row(&self, n: i64) -> &[T] {
        let start = slot(n, self.dim) * self.dim;
        &self.values[start..start + self.dim]
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn moments(&self) -> &Moments<T> {
        &self.moments
    }

    /// Grid mean (1/N^2) sum W.
    pub fn mean(&self) -> T {
        self.moments.mean()
    }

    /// Population variance over the grid.
    pub fn variance(&self) -> T {
        self.moments.variance()
    }

    pub fn sigma(&self) -> T {
        self.variance().sqrt()
    }

    /// Largest imaginary part discarded when the grid was made real.
    pub fn max_residue(&self) -> T {
        self.max_residue
    }

    /// Largest elementwise difference to another grid of the same size.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!(self.dim, other.dim);
        self.values
            .iter()
            .zip(&other.values)
            .fold(T::zero(), |acc, (a, b)| acc.max((*a - *b).abs()))
    }
}
