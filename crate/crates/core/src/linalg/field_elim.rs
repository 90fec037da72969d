//! Gauss-Jordan elimination over a field.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::fraction_free::normalize_poly_vector;
use super::{Eliminate, ExactMatrix, KernelResult};
use crate::algebra::{BaseField, Field, Fp, RatFunc, Rational, Ring, SparsePoly};
use crate::error::{Error, Result};

/// Reduced row echelon form; returns the nonzero rows and their pivot columns.
pub fn rref<F: Field>(m: &ExactMatrix<F>) -> (Vec<Vec<F>>, Vec<usize>) {
    let mut rows = m.row_vecs();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..m.cols() {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].inv().expect("nonzero pivot");
        if !inv.is_one() {
            for c in rows[r].iter_mut() {
                if !c.is_zero() {
                    *c = c.mul(&inv);
                }
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (c, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                if !p.is_zero() {
                    *c = c.sub(&factor.mul(p));
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn field_rank<F: Field>(m: &ExactMatrix<F>) -> usize {
    rref(m).1.len()
}

/// Kernel of a matrix whose nullity is at most one; the vector is returned
/// unnormalized with a one in the free position.
pub fn field_kernel_raw<F: Field>(m: &ExactMatrix<F>) -> Result<KernelResult<F>> {
    let (rows, pivots) = rref(m);
    let nullity = m.cols() - pivots.len();
    match nullity {
        0 => Ok(KernelResult::Trivial),
        1 => {
            let free = (0..m.cols()).find(|c| !pivots.contains(c)).expect("one free column");
            let ctx = m.ctx();
            let mut v = vec![F::zero(ctx); m.cols()];
            v[free] = F::one(ctx);
            for (row, &pc) in rows.iter().zip(&pivots) {
                v[pc] = row[free].neg();
            }
            Ok(KernelResult::Vector(v))
        }
        k => Err(Error::UnexpectedNullity(k)),
    }
}

fn first_nonzero<C: Ring>(v: &[C]) -> &C {
    v.iter().find(|c| !c.is_zero()).expect("nonzero vector")
}

impl Eliminate for Rational {
    fn rank(m: &ExactMatrix<Self>) -> usize {
        field_rank(m)
    }

    fn kernel(m: &ExactMatrix<Self>) -> Result<KernelResult<Self>> {
        Ok(match field_kernel_raw(m)? {
            KernelResult::Vector(v) => KernelResult::Vector(Self::normalize_vector(&v)),
            t => t,
        })
    }

    /// Primitive integer vector with positive first nonzero entry.
    fn normalize_vector(v: &[Self]) -> Vec<Self> {
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for c in v {
            den = den.lcm(c.denom());
            num = num.gcd(c.numer());
        }
        let mut scale = Rational::new(den, num);
        if first_nonzero(v).is_negative() {
            scale = scale.neg();
        }
        v.iter().map(|c| c.mul(&scale)).collect()
    }
}

impl Eliminate for Fp {
    fn rank(m: &ExactMatrix<Self>) -> usize {
        field_rank(m)
    }

    fn kernel(m: &ExactMatrix<Self>) -> Result<KernelResult<Self>> {
        Ok(match field_kernel_raw(m)? {
            KernelResult::Vector(v) => KernelResult::Vector(Self::normalize_vector(&v)),
            t => t,
        })
    }

    /// First nonzero entry scaled to one.
    fn normalize_vector(v: &[Self]) -> Vec<Self> {
        let inv = first_nonzero(v).inv().expect("nonzero");
        v.iter().map(|c| c.mul(&inv)).collect()
    }
}

impl<B: BaseField> Eliminate for RatFunc<B> {
    fn rank(m: &ExactMatrix<Self>) -> usize {
        field_rank(m)
    }

    fn kernel(m: &ExactMatrix<Self>) -> Result<KernelResult<Self>> {
        Ok(match field_kernel_raw(m)? {
            KernelResult::Vector(v) => KernelResult::Vector(Self::normalize_vector(&v)),
            t => t,
        })
    }

    /// Denominators cleared, then the polynomial vector normalization.
    fn normalize_vector(v: &[Self]) -> Vec<Self> {
        let polys = clear_denominators(v);
        normalize_poly_vector(&polys).into_iter().map(RatFunc::from_poly).collect()
    }
}

/// Multiplies a vector of rational functions by the lcm of its denominators.
pub fn clear_denominators<B: BaseField>(v: &[RatFunc<B>]) -> Vec<SparsePoly<B>> {
    let ctx = v.first().map(|c| c.ctx()).expect("nonempty vector");
    let mut l = SparsePoly::one(ctx);
    for c in v {
        if !c.denom().is_one() {
            l = crate::algebra::lcm(&l, c.denom());
        }
    }
    v.iter()
        .map(|c| {
            if c.is_zero() {
                SparsePoly::new(ctx)
            } else {
                c.numer().mul(&l.exact_div(c.denom()).expect("lcm is a multiple"))
            }
        })
        .collect()
}
