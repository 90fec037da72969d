//! Exact rank and kernels.

mod field_elim;
mod fraction_free;
mod matrix;

pub use field_elim::{clear_denominators, field_kernel_raw, field_rank, rref};
pub use fraction_free::{eliminate, nonsingular_at, normalize_poly_vector};
pub use matrix::{ExactMatrix, KernelResult, RowTag};

use crate::algebra::Ring;
use crate::error::Result;

/// Scalars with an exact elimination routine.
///
/// Kernels are only computed for matrices of nullity at most one; a larger
/// kernel is reported as [`crate::Error::UnexpectedNullity`].
pub trait Eliminate: Ring {
    fn rank(m: &ExactMatrix<Self>) -> usize;
    fn kernel(m: &ExactMatrix<Self>) -> Result<KernelResult<Self>>;
    /// Canonical representative of the line spanned by `v`.
    fn normalize_vector(v: &[Self]) -> Vec<Self>;
}

pub fn kernel<C: Eliminate>(m: &ExactMatrix<C>) -> Result<KernelResult<C>> {
    C::kernel(m)
}

pub fn rank<C: Eliminate>(m: &ExactMatrix<C>) -> usize {
    C::rank(m)
}

#[cfg(test)]
mod tests;
