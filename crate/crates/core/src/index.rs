//! Symmetric index convention on Z_N: n runs over -(N-1)/2 ..= (N-1)/2.
//!
//! Arrays indexed by the symmetric range are stored with offset `half`, i.e.
//! slot `n + half`. "Natural" order (slot `n mod N`) is what the FFT sees.

use crate::error::{Error, Result};

/// Checks that `dim` is a positive odd integer.
pub fn check_odd(dim: usize) -> Result<()> {
    if dim == 0 || dim % 2 == 0 {
        Err(Error::InvalidDimension(dim))
    } else {
        Ok(())
    }
}

#[inline]
pub fn half(dim: usize) -> i64 {
    (dim as i64 - 1) / 2
}

/// Reduces any integer into the symmetric range.
#[inline]
pub fn wrap(n: i64, dim: usize) -> i64 {
    let d = dim as i64;
    let h = half(dim);
    (n + h).rem_euclid(d) - h
}

#[inline]
pub fn in_range(n: i64, dim: usize) -> bool {
    n.abs() <= half(dim)
}

pub fn check_index(n: i64, dim: usize) -> Result<()> {
    if in_range(n, dim) {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange { index: n, dim })
    }
}

/// Storage slot of symmetric index `n` (wrapped first).
#[inline]
pub fn slot(n: i64, dim: usize) -> usize {
    (wrap(n, dim) + half(dim)) as usize
}

/// Symmetric index stored at `slot`.
#[inline]
pub fn index_of_slot(slot: usize, dim: usize) -> i64 {
    slot as i64 - half(dim)
}

/// Symmetric index represented by natural-order position `k` (k = n mod N).
#[inline]
pub fn index_of_natural(k: usize, dim: usize) -> i64 {
    wrap(k as i64, dim)
}

/// Iterator over the symmetric range in storage order.
pub fn symmetric_range(dim: usize) -> impl Iterator<Item = i64> + Clone {
    let h = half(dim);
    -h..=h
}

/// Copies symmetric-order data into natural order.
pub fn to_natural<T: Copy>(sym: &[T], out: &mut [T]) {
    let h = (sym.len() - 1) / 2;
    out.copy_from_slice(sym);
    out.rotate_left(h);
}

/// Copies natural-order data into symmetric order.
pub fn to_symmetric<T: Copy>(nat: &[T], out: &mut [T]) {
    let h = (nat.len() - 1) / 2;
    out.copy_from_slice(nat);
    out.rotate_right(h);
}
