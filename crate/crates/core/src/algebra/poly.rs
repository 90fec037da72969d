use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use super::ring::{Names, Ring};
use super::{Exponent, MonomialOrder};
use crate::error::{Error, Result};

/// Context of a polynomial ring: variable count plus the coefficient context.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PolyCtx<C> {
    pub nvars: usize,
    pub coeff: C,
}

impl<C> PolyCtx<C> {
    pub fn new(nvars: usize, coeff: C) -> Self {
        PolyCtx { nvars, coeff }
    }
}

/// Sparse multivariate polynomial over a ring `C`.
///
/// Terms are kept strictly descending in graded lexicographic order (variable
/// 0 most significant) with no zero coefficients, so equal polynomials have
/// identical term vectors. Use [`SparsePoly::terms_in`] to iterate in another
/// monomial order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparsePoly<C: Ring> {
    ctx: PolyCtx<C::Ctx>,
    terms: Vec<(Exponent, C)>,
}

impl<C: Ring> SparsePoly<C> {
    pub fn new(ctx: PolyCtx<C::Ctx>) -> Self {
        SparsePoly { ctx, terms: Vec::new() }
    }

    pub fn constant(ctx: PolyCtx<C::Ctx>, c: C) -> Self {
        Self::monomial(ctx, Exponent::zero(ctx.nvars), c)
    }

    pub fn monomial(ctx: PolyCtx<C::Ctx>, exp: Exponent, c: C) -> Self {
        debug_assert_eq!(exp.len(), ctx.nvars);
        if c.is_zero() {
            return Self::new(ctx);
        }
        SparsePoly { ctx, terms: vec![(exp, c)] }
    }

    /// The variable `x_var`.
    pub fn var(ctx: PolyCtx<C::Ctx>, var: usize) -> Self {
        Self::monomial(ctx, Exponent::unit(ctx.nvars, var, 1), C::one(ctx.coeff))
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates.
    pub fn from_terms(ctx: PolyCtx<C::Ctx>, terms: impl IntoIterator<Item = (Exponent, C)>) -> Self {
        let mut acc: HashMap<Exponent, C> = HashMap::new();
        for (e, c) in terms {
            debug_assert_eq!(e.len(), ctx.nvars);
            match acc.get_mut(&e) {
                Some(slot) => slot.add_assign(&c),
                None => {
                    acc.insert(e, c);
                }
            }
        }
        Self::from_map(ctx, acc)
    }

    fn from_map(ctx: PolyCtx<C::Ctx>, acc: HashMap<Exponent, C>) -> Self {
        let mut terms: Vec<(Exponent, C)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| b.0.cmp_grlex(&a.0));
        SparsePoly { ctx, terms }
    }

    /// Wraps terms already sorted strictly descending in grlex with no zeros.
    pub(crate) fn from_sorted(ctx: PolyCtx<C::Ctx>, terms: Vec<(Exponent, C)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0.cmp_grlex(&w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        SparsePoly { ctx, terms }
    }

    pub fn poly_ctx(&self) -> PolyCtx<C::Ctx> {
        self.ctx
    }

    pub fn nvars(&self) -> usize {
        self.ctx.nvars
    }

    pub fn terms(&self) -> &[(Exponent, C)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Exponent, C)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_zero())
    }

    /// Coefficient of `x^exp` (zero if absent).
    pub fn coeff(&self, exp: &Exponent) -> C {
        self.coeff_ref(exp).cloned().unwrap_or_else(|| C::zero(self.ctx.coeff))
    }

    pub fn coeff_ref(&self, exp: &Exponent) -> Option<&C> {
        self.terms
            .binary_search_by(|(e, _)| exp.cmp_grlex(e))
            .ok()
            .map(|i| &self.terms[i].1)
    }

    pub fn constant_coeff(&self) -> C {
        self.coeff(&Exponent::zero(self.ctx.nvars))
    }

    /// Leading term in the storage (grlex) order.
    pub fn leading(&self) -> Option<&(Exponent, C)> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> Option<&C> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.first().map(|(e, _)| e.degree())
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(e, _)| e.get(var)).max().unwrap_or(0)
    }

    pub fn support(&self) -> impl Iterator<Item = &Exponent> {
        self.terms.iter().map(|(e, _)| e)
    }

    /// Terms sorted descending in `order`.
    pub fn terms_in(&self, order: &MonomialOrder) -> Vec<&(Exponent, C)> {
        let mut v: Vec<&(Exponent, C)> = self.terms.iter().collect();
        v.sort_by(|a, b| order.cmp(&b.0, &a.0));
        v
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::new(self.ctx);
        }
        let terms = self
            .terms
            .iter()
            .filter_map(|(e, a)| {
                let p = a.mul(c);
                (!p.is_zero()).then(|| (e.clone(), p))
            })
            .collect();
        SparsePoly { ctx: self.ctx, terms }
    }

    /// Multiplication by the single term `c·x^exp`.
    pub fn mul_term(&self, exp: &Exponent, c: &C) -> Self {
        if c.is_zero() {
            return Self::new(self.ctx);
        }
        let terms = self
            .terms
            .iter()
            .filter_map(|(e, a)| {
                let p = a.mul(c);
                (!p.is_zero()).then(|| (e.add(exp), p))
            })
            .collect();
        // shifting by a fixed exponent preserves grlex order
        SparsePoly { ctx: self.ctx, terms }
    }

    /// Terms of total degree at most `max_degree`.
    pub fn truncate(&self, max_degree: u64) -> Self {
        let terms = self.terms.iter().filter(|(e, _)| e.degree() <= max_degree).cloned().collect();
        SparsePoly { ctx: self.ctx, terms }
    }

    /// The homogeneous component of total degree `degree`.
    pub fn homogeneous_part(&self, degree: u64) -> Self {
        let terms = self.terms.iter().filter(|(e, _)| e.degree() == degree).cloned().collect();
        SparsePoly { ctx: self.ctx, terms }
    }

    pub fn map_coeffs<D: Ring>(&self, ctx: PolyCtx<D::Ctx>, f: impl Fn(&C) -> D) -> SparsePoly<D> {
        debug_assert_eq!(ctx.nvars, self.ctx.nvars);
        let terms = self
            .terms
            .iter()
            .filter_map(|(e, c)| {
                let d = f(c);
                (!d.is_zero()).then(|| (e.clone(), d))
            })
            .collect();
        SparsePoly { ctx, terms }
    }

    /// Evaluates at a point of the coefficient ring.
    pub fn eval(&self, point: &[C]) -> C {
        debug_assert_eq!(point.len(), self.ctx.nvars);
        let mut acc = C::zero(self.ctx.coeff);
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, k) in e.iter().enumerate() {
                if k > 0 {
                    t = t.mul(&point[i].pow(k));
                }
            }
            acc.add_assign(&t);
        }
        acc
    }

    /// Sum, failing when the operands live in different rings.
    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.same_ring(rhs)?;
        Ok(self.add(rhs))
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        self.same_ring(rhs)?;
        Ok(self.mul(rhs))
    }

    pub fn try_scale(&self, c: &C) -> Result<Self> {
        if c.ctx() != self.ctx.coeff {
            return Err(Error::RingMismatch);
        }
        Ok(self.scale(c))
    }

    fn same_ring(&self, rhs: &Self) -> Result<()> {
        if self.ctx != rhs.ctx {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    fn merge(&self, rhs: &Self, negate: bool) -> Self {
        debug_assert_eq!(self.ctx, rhs.ctx);
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &rhs.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp_grlex(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { b[j].1.neg() } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { a[i].1.sub(&b[j].1) } else { a[i].1.add(&b[j].1) };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for (e, c) in &b[j..] {
            out.push((e.clone(), if negate { c.neg() } else { c.clone() }));
        }
        SparsePoly { ctx: self.ctx, terms: out }
    }

    pub fn render_in(&self, order: &MonomialOrder, names: Names<'_>) -> String {
        render_terms(self.terms_in(order).into_iter(), names)
    }
}

fn render_terms<'a, C: Ring>(terms: impl Iterator<Item = &'a (Exponent, C)>, names: Names<'_>) -> String {
    let outer: &[String] = names.first().map(|v| v.as_slice()).unwrap_or(&[]);
    let inner = if names.is_empty() { names } else { &names[1..] };
    let mut out = String::new();
    for (k, (e, c)) in terms.enumerate() {
        let piece = if e.is_zero() {
            let s = c.render(inner);
            if c.needs_parens() {
                format!("({})", s)
            } else {
                s
            }
        } else {
            let m = e.render_monomial(outer);
            if c.is_one() {
                m
            } else if c.is_minus_one() {
                format!("-{}", m)
            } else if c.needs_parens() {
                format!("({})*{}", c.render(inner), m)
            } else {
                format!("{}*{}", c.render(inner), m)
            }
        };
        if k == 0 {
            out.push_str(&piece);
        } else if let Some(rest) = piece.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&piece);
        }
    }
    if out.is_empty() {
        "0".to_string()
    } else {
        out
    }
}

impl<C: Ring> Ring for SparsePoly<C> {
    type Ctx = PolyCtx<C::Ctx>;

    fn ctx(&self) -> Self::Ctx {
        self.ctx
    }

    fn zero(ctx: Self::Ctx) -> Self {
        Self::new(ctx)
    }

    fn one(ctx: Self::Ctx) -> Self {
        Self::constant(ctx, C::one(ctx.coeff))
    }

    fn from_i64(ctx: Self::Ctx, v: i64) -> Self {
        Self::constant(ctx, C::from_i64(ctx.coeff, v))
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_zero() && self.terms[0].1.is_one()
    }

    fn add(&self, rhs: &Self) -> Self {
        self.merge(rhs, false)
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.merge(rhs, true)
    }

    fn mul(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.ctx, rhs.ctx);
        if self.terms.is_empty() || rhs.terms.is_empty() {
            return Self::new(self.ctx);
        }
        if rhs.terms.len() == 1 {
            let (e, c) = &rhs.terms[0];
            return self.mul_term(e, c);
        }
        if self.terms.len() == 1 {
            let (e, c) = &self.terms[0];
            return rhs.mul_term(e, c);
        }
        let mut acc: HashMap<Exponent, C> = HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = ea.add(eb);
                let c = ca.mul(cb);
                match acc.get_mut(&e) {
                    Some(slot) => slot.add_assign(&c),
                    None => {
                        acc.insert(e, c);
                    }
                }
            }
        }
        Self::from_map(self.ctx, acc)
    }

    fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect();
        SparsePoly { ctx: self.ctx, terms }
    }

    fn render(&self, names: Names<'_>) -> String {
        render_terms(self.terms.iter(), names)
    }

    fn needs_parens(&self) -> bool {
        self.terms.len() > 1
    }
}

impl<C: Ring> fmt::Debug for SparsePoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&[]))
    }
}

impl<C: Ring> fmt::Display for SparsePoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&[]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Rational;

    type P = SparsePoly<Rational>;

    fn ctx2() -> PolyCtx<()> {
        PolyCtx::new(2, ())
    }

    fn names() -> Vec<Vec<String>> {
        vec![vec!["x".into(), "y".into()]]
    }

    #[test]
    fn ring_mismatch() {
        let a = P::var(PolyCtx::new(2, ()), 0);
        let b = P::var(PolyCtx::new(3, ()), 0);
        assert_eq!(a.try_add(&b), Err(Error::RingMismatch));
        assert_eq!(a.try_mul(&b), Err(Error::RingMismatch));
        assert!(a.try_add(&a).is_ok());
    }

    #[test]
    fn add_cancels() {
        let x = P::var(ctx2(), 0);
        let y = P::var(ctx2(), 1);
        let s = x.add(&y).add(&x.neg());
        assert_eq!(s, y);
    }

    #[test]
    fn mul_monomials() {
        let x = P::var(ctx2(), 0);
        let y = P::var(ctx2(), 1);
        assert_eq!(x.mul(&y).render(&names()), "x*y");
    }

    #[test]
    fn param_coefficient() {
        // t1 * x^2 with coefficients in Q[t1]
        let tctx = PolyCtx::new(1, ());
        let t1 = P::var(tctx, 0);
        let xctx = PolyCtx::new(2, tctx);
        let x2 = SparsePoly::<P>::monomial(xctx, Exponent::from([2, 0]), P::one(tctx));
        let r = x2.scale(&t1);
        let nm = vec![vec!["x".into(), "y".into()], vec!["t1".into()]];
        assert_eq!(r.render(&nm), "t1*x^2");
    }

    #[test]
    fn render_signs() {
        let x = P::var(ctx2(), 0);
        let y = P::var(ctx2(), 1);
        let p = x.pow(3).sub(&y.scale(&Rational::integer(2))).sub(&P::one(ctx2()));
        assert_eq!(p.render(&names()), "x^3 - 2*y - 1");
        let q = x.scale(&Rational::new(-1, 2));
        assert_eq!(q.render(&names()), "-1/2*x");
    }

    #[test]
    fn terms_in_order() {
        let x = P::var(ctx2(), 0);
        let y = P::var(ctx2(), 1);
        let p = x.add(&y.pow(2));
        let lex = MonomialOrder::lex(2);
        assert_eq!(p.render_in(&lex, &names()), "x + y^2");
        assert_eq!(p.render(&names()), "y^2 + x");
    }

    #[test]
    fn truncation_and_eval() {
        let x = P::var(ctx2(), 0);
        let y = P::var(ctx2(), 1);
        let p = x.pow(3).add(&x.mul(&y)).add(&y);
        assert_eq!(p.truncate(2), x.mul(&y).add(&y));
        let v = p.eval(&[Rational::integer(2), Rational::integer(3)]);
        assert_eq!(v, Rational::integer(8 + 6 + 3));
    }
}
