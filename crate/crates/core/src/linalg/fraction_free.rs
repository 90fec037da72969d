//! Fraction-free elimination for matrices over `K[t]`.
//!
//! Rows are combined as `p·row_i - e·row_r` and then divided by their
//! content, so entries stay polynomial and small. A constant pivot is used
//! whenever the column has one, which keeps most updates to a plain
//! subtraction.

use super::{field_elim, Eliminate, ExactMatrix, KernelResult};
use crate::algebra::{gcd, lcm, BaseField, Ring, SparsePoly};
use crate::error::{Error, Result};

type Row<B> = Vec<SparsePoly<B>>;

/// Gcd of all entries, normalized; zero for a zero row.
fn content<B: BaseField>(row: &[SparsePoly<B>]) -> Option<SparsePoly<B>> {
    let mut g: Option<SparsePoly<B>> = None;
    for e in row.iter().filter(|e| !e.is_zero()) {
        g = Some(match g {
            None => e.normalize(),
            Some(g) => gcd(&g, e),
        });
        if g.as_ref().is_some_and(|g| g.is_constant()) {
            return g;
        }
    }
    g
}

fn strip_content<B: BaseField>(row: &mut Row<B>) {
    if let Some(g) = content(row) {
        if g.is_constant() {
            return;
        }
        for e in row.iter_mut() {
            if !e.is_zero() {
                *e = e.exact_div(&g).expect("content divides");
            }
        }
    }
}

/// Gauss-Jordan elimination; returns the nonzero rows and pivot columns.
pub fn eliminate<B: BaseField>(m: &ExactMatrix<SparsePoly<B>>) -> (Vec<Row<B>>, Vec<usize>) {
    let mut rows: Vec<Row<B>> = m.row_vecs().into_iter().filter(|r| r.iter().any(|e| !e.is_zero())).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..m.cols() {
        if r == rows.len() {
            break;
        }
        let candidates = (r..rows.len()).filter(|&i| !rows[i][col].is_zero());
        let mut chosen = None;
        for i in candidates {
            if rows[i][col].is_constant() {
                chosen = Some(i);
                break;
            }
            chosen.get_or_insert(i);
        }
        let Some(p) = chosen else { continue };
        rows.swap(r, p);
        strip_content(&mut rows[r]);
        let pivot_row = rows[r].clone();
        let pv = pivot_row[col].clone();
        let unit = pv.is_constant();
        let pv_inv = unit.then(|| pv.terms()[0].1.inv().expect("nonzero"));
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let e = row[col].clone();
            match &pv_inv {
                Some(inv) => {
                    let f = e.scale(inv);
                    for (c, p) in row.iter_mut().zip(&pivot_row) {
                        if !p.is_zero() {
                            *c = c.sub(&f.mul(p));
                        }
                    }
                }
                None => {
                    for (c, p) in row.iter_mut().zip(&pivot_row) {
                        let a = if c.is_zero() { c.clone() } else { pv.mul(c) };
                        *c = if p.is_zero() { a } else { a.sub(&e.mul(p)) };
                    }
                    strip_content(row);
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

/// Divides by the gcd of the entries, then by the unit that makes the
/// first nonzero entry canonical (positive leading coefficient over `Q`,
/// monic over `F_p`) while keeping integer coefficients primitive.
pub fn normalize_poly_vector<B: BaseField>(v: &[SparsePoly<B>]) -> Vec<SparsePoly<B>> {
    let Some(g) = content(v) else {
        return v.to_vec();
    };
    let v: Vec<SparsePoly<B>> =
        v.iter().map(|e| if e.is_zero() { e.clone() } else { e.exact_div(&g).expect("content divides") }).collect();
    let first = v.iter().find(|e| !e.is_zero()).expect("nonzero vector");
    let lead = first.leading_coeff().expect("nonzero").clone();
    let unit = B::normalizing_unit(v.iter().flat_map(|e| e.terms().iter().map(|(_, c)| c)), &lead);
    v.iter().map(|e| e.div_scalar(&unit)).collect()
}

impl<B: BaseField> Eliminate for SparsePoly<B> {
    fn rank(m: &ExactMatrix<Self>) -> usize {
        eliminate(m).1.len()
    }

    fn kernel(m: &ExactMatrix<Self>) -> Result<KernelResult<Self>> {
        let (rows, pivots) = eliminate(m);
        let nullity = m.cols() - pivots.len();
        match nullity {
            0 => Ok(KernelResult::Trivial),
            1 => {
                let free = (0..m.cols()).find(|c| !pivots.contains(c)).expect("one free column");
                let ctx = m.ctx();
                let mut l = SparsePoly::one(ctx);
                for (row, &pc) in rows.iter().zip(&pivots) {
                    if !row[pc].is_constant() {
                        l = lcm(&l, &row[pc]);
                    }
                }
                let mut v = vec![SparsePoly::new(ctx); m.cols()];
                for (row, &pc) in rows.iter().zip(&pivots) {
                    // p·v_pc + m·v_free = 0 with v_free = l
                    let q = l.exact_div(&row[pc]).expect("lcm is a multiple");
                    v[pc] = row[free].mul(&q).neg();
                }
                v[free] = l;
                Ok(KernelResult::Vector(normalize_poly_vector(&v)))
            }
            k => Err(Error::UnexpectedNullity(k)),
        }
    }

    fn normalize_vector(v: &[Self]) -> Vec<Self> {
        normalize_poly_vector(v)
    }
}

/// Whether the matrix keeps full column rank after substituting `point`.
pub fn nonsingular_at<B: BaseField>(m: &ExactMatrix<SparsePoly<B>>, point: &[B]) -> bool {
    let ctx = m.ctx().coeff;
    let spec = m.map(ctx, |e| e.eval(point));
    field_elim::field_rank(&spec) == m.cols()
}
