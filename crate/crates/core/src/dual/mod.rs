//! The injective hull `E` spanned by inverse monomials `1/x^{β+1}`.

mod staircase;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

pub use staircase::{minimal_generators, standard_monomials, Staircase};

use crate::algebra::{Exponent, MonomialOrder, Names, PolyCtx, Ring, SparsePoly};
use crate::error::{Error, Result};

/// The dual term `1/x^{β+1}`, stored by `β`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DualTerm(pub Exponent);

impl DualTerm {
    pub fn exponent(&self) -> &Exponent {
        &self.0
    }

    /// `x^α · 1/x^{β+1}`.
    pub fn act_monomial(&self, alpha: &Exponent) -> Option<DualTerm> {
        self.0.checked_sub(alpha).map(DualTerm)
    }

    /// `1/(x^2*y)` style rendering.
    pub fn render(&self, names: &[String]) -> String {
        let shifted = Exponent::new(self.0.iter().map(|a| a + 1));
        let m = shifted.render_monomial(names);
        if m.contains('*') {
            format!("1/({})", m)
        } else {
            format!("1/{}", m)
        }
    }
}

impl fmt::Debug for DualTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "τ{}", self.0)
    }
}

/// A finite linear combination of dual terms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DualElement<C: Ring>(SparsePoly<C>);

impl<C: Ring> DualElement<C> {
    pub fn zero(ctx: PolyCtx<C::Ctx>) -> Self {
        DualElement(SparsePoly::new(ctx))
    }

    pub fn term(ctx: PolyCtx<C::Ctx>, t: &DualTerm, c: C) -> Self {
        DualElement(SparsePoly::monomial(ctx, t.0.clone(), c))
    }

    pub fn from_terms(ctx: PolyCtx<C::Ctx>, terms: impl IntoIterator<Item = (DualTerm, C)>) -> Self {
        DualElement(SparsePoly::from_terms(ctx, terms.into_iter().map(|(t, c)| (t.0, c))))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn ctx(&self) -> PolyCtx<C::Ctx> {
        self.0.poly_ctx()
    }

    pub fn coeff(&self, t: &DualTerm) -> C {
        self.0.coeff(&t.0)
    }

    /// `(β, c)` pairs in storage order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &C)> {
        self.0.terms().iter().map(|(e, c)| (e, c))
    }

    /// Terms descending in `order`.
    pub fn terms_in(&self, order: &MonomialOrder) -> Vec<(DualTerm, C)> {
        self.0.terms_in(order).into_iter().map(|(e, c)| (DualTerm(e.clone()), c.clone())).collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        DualElement(self.0.add(&other.0))
    }

    pub fn scale(&self, c: &C) -> Self {
        DualElement(self.0.scale(c))
    }

    pub fn map_coeffs<D: Ring>(&self, ctx: PolyCtx<D::Ctx>, f: impl Fn(&C) -> D) -> DualElement<D> {
        DualElement(self.0.map_coeffs(ctx, f))
    }

    /// `c_1/x^{β_1+1} + …`, descending in `order`.
    pub fn render(&self, order: &MonomialOrder, names: Names<'_>) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let outer: &[String] = names.first().map(|v| v.as_slice()).unwrap_or(&[]);
        let inner = if names.is_empty() { names } else { &names[1..] };
        let mut out = String::new();
        for (k, (t, c)) in self.terms_in(order).into_iter().enumerate() {
            let mono = Exponent::new(t.0.iter().map(|a| a + 1)).render_monomial(outer);
            let den = if mono.contains('*') { format!("({})", mono) } else { mono };
            let num = c.render(inner);
            let piece = if c.needs_parens() { format!("({})/{}", num, den) } else { format!("{}/{}", num, den) };
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
        out
    }
}

impl<C: Ring> fmt::Debug for DualElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.0.terms().iter().map(|(e, c)| format!("{:?}·τ{}", c, e)).collect();
        write!(f, "{}", if v.is_empty() { "0".into() } else { v.join(" + ") })
    }
}

/// `f · η` under the contraction action.
pub fn act<C: Ring>(f: &SparsePoly<C>, eta: &DualElement<C>) -> DualElement<C> {
    let mut acc: HashMap<Exponent, C> = HashMap::new();
    for (alpha, a) in f.terms() {
        for (beta, c) in eta.0.terms() {
            if let Some(d) = beta.checked_sub(alpha) {
                let p = a.mul(c);
                match acc.get_mut(&d) {
                    Some(slot) => slot.add_assign(&p),
                    None => {
                        acc.insert(d, p);
                    }
                }
            }
        }
    }
    DualElement(SparsePoly::from_terms(eta.ctx(), acc))
}

/// `f · τ` for a single dual term.
pub fn act_on_term<C: Ring>(f: &SparsePoly<C>, tau: &DualTerm) -> Vec<(DualTerm, C)> {
    f.terms()
        .iter()
        .filter_map(|(alpha, a)| tau.0.checked_sub(alpha).map(|d| (DualTerm(d), a.clone())))
        .collect()
}

/// Leading term and coefficient of a nonzero element.
pub fn leading<C: Ring>(eta: &DualElement<C>, order: &MonomialOrder) -> Result<(DualTerm, C)> {
    let best = eta
        .0
        .terms()
        .iter()
        .max_by(|a, b| order.cmp(&a.0, &b.0))
        .ok_or(Error::ZeroElement)?;
    Ok((DualTerm(best.0.clone()), best.1.clone()))
}

/// Standard monomials of the ideal generated by the given supports, and the
/// corresponding dual terms sorted ascending in `order`.
pub fn initial_staircase<'a>(
    nvars: usize,
    supports: impl IntoIterator<Item = &'a Exponent>,
    order: &MonomialOrder,
    max_size: usize,
) -> Result<(Staircase, Vec<DualTerm>)> {
    let gens: Vec<Exponent> = supports.into_iter().cloned().collect();
    let s = standard_monomials(nvars, &minimal_generators(&gens), max_size)?;
    let terms = s.enumerate_sorted(order).into_iter().map(DualTerm).collect();
    Ok((s, terms))
}

/// The smallest staircase containing every term of every element.
pub fn span_of_terms<'a, C: Ring + 'a>(nvars: usize, elements: impl IntoIterator<Item = &'a DualElement<C>>) -> Staircase {
    let pts: Vec<&Exponent> = elements.into_iter().flat_map(|e| e.0.terms().iter().map(|(x, _)| x)).collect();
    Staircase::from_points(nvars, pts)
}

/// Candidate terms below `tau0`: the colon of `t2` by the maximal ideal,
/// minus `ltn`, restricted to terms strictly below `tau0`, descending.
pub fn gamma_candidates(t2: &Staircase, ltn: &Staircase, order: &MonomialOrder, tau0: &DualTerm) -> Vec<DualTerm> {
    let mut v: Vec<Exponent> = t2
        .colon()
        .into_iter()
        .filter(|p| !ltn.contains(p) && order.cmp(p, &tau0.0) == Ordering::Less)
        .collect();
    v.sort_by(|a, b| order.cmp(b, a));
    v.into_iter().map(DualTerm).collect()
}

#[cfg(test)]
mod tests;
