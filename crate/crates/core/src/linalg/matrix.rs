use std::fmt;

use crate::algebra::{Exponent, Names, Ring};

/// Where a row of a block matrix came from: the generator index and the
/// dual term whose coefficient the row records.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RowTag {
    pub generator: usize,
    pub term: Exponent,
}

/// Dense row-major matrix over an exact ring.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix<C: Ring> {
    ctx: C::Ctx,
    rows: usize,
    cols: usize,
    entries: Vec<C>,
    tags: Option<Vec<RowTag>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KernelResult<C> {
    Trivial,
    Vector(Vec<C>),
}

impl<C> KernelResult<C> {
    pub fn is_trivial(&self) -> bool {
        matches!(self, KernelResult::Trivial)
    }

    pub fn vector(&self) -> Option<&[C]> {
        match self {
            KernelResult::Trivial => None,
            KernelResult::Vector(v) => Some(v),
        }
    }
}

impl<C: Ring> ExactMatrix<C> {
    pub fn zeros(ctx: C::Ctx, rows: usize, cols: usize) -> Self {
        ExactMatrix { ctx, rows, cols, entries: vec![C::zero(ctx); rows * cols], tags: None }
    }

    pub fn identity(ctx: C::Ctx, n: usize) -> Self {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            m.set(i, i, C::one(ctx));
        }
        m
    }

    /// Builds a matrix from rows; every row must have `cols` entries.
    pub fn from_rows(ctx: C::Ctx, cols: usize, rows: Vec<Vec<C>>) -> Self {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            entries.extend(r);
        }
        ExactMatrix { ctx, rows: n, cols, entries, tags: None }
    }

    pub fn with_tags(mut self, tags: Vec<RowTag>) -> Self {
        assert_eq!(tags.len(), self.rows);
        self.tags = Some(tags);
        self
    }

    pub fn ctx(&self) -> C::Ctx {
        self.ctx
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn tags(&self) -> Option<&[RowTag]> {
        self.tags.as_deref()
    }

    pub fn get(&self, i: usize, j: usize) -> &C {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: C) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[C] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<C>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[C] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|c| c.is_zero())
    }

    pub fn mul_vec(&self, v: &[C]) -> Vec<C> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = C::zero(self.ctx);
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc.add_assign(&a.mul(b));
                    }
                }
                acc
            })
            .collect()
    }

    /// Whether `M·v = 0`.
    pub fn annihilates(&self, v: &[C]) -> bool {
        self.mul_vec(v).iter().all(|c| c.is_zero())
    }

    /// The submatrix on the given columns (tags are kept).
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let entries = (0..self.rows)
            .flat_map(|i| cols.iter().map(move |&j| self.get(i, j).clone()))
            .collect();
        ExactMatrix { ctx: self.ctx, rows: self.rows, cols: cols.len(), entries, tags: self.tags.clone() }
    }

    pub fn map<D: Ring>(&self, ctx: D::Ctx, f: impl Fn(&C) -> D) -> ExactMatrix<D> {
        ExactMatrix {
            ctx,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
            tags: self.tags.clone(),
        }
    }

    pub fn try_map<D: Ring, E>(&self, ctx: D::Ctx, f: impl Fn(&C) -> Result<D, E>) -> Result<ExactMatrix<D>, E> {
        let entries = self.entries.iter().map(f).collect::<Result<Vec<_>, E>>()?;
        Ok(ExactMatrix { ctx, rows: self.rows, cols: self.cols, entries, tags: self.tags.clone() })
    }

    pub fn render(&self, names: Names<'_>) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|c| c.render(names)).collect()).collect()
    }
}

impl<C: Ring> fmt::Debug for ExactMatrix<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|c| c.render(&[])).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "] ({}x{})", self.rows, self.cols)
    }
}
